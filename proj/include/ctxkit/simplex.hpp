#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ctxkit/rational.hpp"

namespace ctxkit::lp {

enum class Relation { Eq, Le, Ge };

std::string to_string(Relation rel);

struct Row {
  std::vector<Rational> coeffs;
  Relation relation = Relation::Eq;
  Rational rhs{0};
};

// minimize objective . x subject to rows, x >= 0.
struct LinearProgram {
  std::size_t variable_count = 0;
  std::vector<Row> rows;
  std::vector<Rational> objective;  // empty means pure feasibility

  void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs);
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational objective{0};
  // When infeasible: y with y_i >= 0 on Ge rows, y_i <= 0 on Le rows, free on
  // Eq rows, sum_i y_i * row_i <= 0 in every coordinate and y . rhs > 0.
  std::vector<Rational> farkas;
  std::size_t pivots = 0;
};

// Two-phase dense tableau simplex in exact arithmetic. Both phases use Bland's
// rule (lowest-index entering column, lowest-index leaving basic variable on
// ratio ties), so the method terminates and the returned vertex is a
// deterministic function of the input.
Result solve(const LinearProgram& program);

// Exact check of the Farkas conditions documented on Result::farkas.
bool verify_farkas(const LinearProgram& program, const std::vector<Rational>& y);

// True when x >= 0 and every row holds exactly.
bool satisfies(const LinearProgram& program, const std::vector<Rational>& x);

enum class Sense { Minimize, Maximize };

struct Objective {
  std::vector<Rational> coeffs;
  Sense sense = Sense::Minimize;
};

// Optimizes `objectives` in priority order: after each stage the achieved
// optimum is added as an equality row. Returns the last stage's result; a
// non-optimal stage is returned immediately.
Result solve_lexicographic(LinearProgram program, const std::vector<Objective>& objectives);

}  // namespace ctxkit::lp
