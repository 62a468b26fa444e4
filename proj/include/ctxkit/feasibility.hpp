#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ctxkit/event_space.hpp"
#include "ctxkit/interval.hpp"
#include "ctxkit/measures.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/simplex.hpp"

namespace ctxkit {

enum class ScenarioKind { Standard, Lower, Upper };
enum class Endpoint { Lo, Hi };
enum class Verdict { Feasible, Infeasible, Indeterminate };

std::string to_string(ScenarioKind kind);
std::string to_string(Endpoint endpoint);
std::string to_string(Verdict verdict);
ScenarioKind parse_scenario_kind(const std::string& text);
lp::Relation parse_relation(const std::string& text);

struct MomentConstraint {
  std::vector<std::string> subset;
  lp::Relation relation = lp::Relation::Eq;
  ScalarInterval target;
  std::string expression;  // source text, echoed in reports

  const Rational& target_at(Endpoint e) const { return e == Endpoint::Lo ? target.lo() : target.hi(); }
};

class Scenario {
 public:
  // Throws InputError for unknown variables, empty or repeated subsets, and
  // duplicate moments (subsets equal as sets).
  Scenario(EventSpace space, std::vector<MomentConstraint> constraints,
           ScenarioKind kind = ScenarioKind::Standard);

  const EventSpace& space() const { return space_; }
  const std::vector<MomentConstraint>& constraints() const { return constraints_; }
  ScenarioKind kind() const { return kind_; }
  bool exact() const;

  // Row 0 is the normalization sum(p) = 1, row i is constraint i-1.
  lp::LinearProgram feasibility_program(Endpoint endpoint) const;
  std::vector<std::string> row_labels() const;

  std::string title;
  std::string notes;

 private:
  EventSpace space_;
  std::vector<MomentConstraint> constraints_;
  ScenarioKind kind_;
};

struct ConstraintCheck {
  std::string moment;
  lp::Relation relation;
  Rational target;
  Rational achieved;
  bool satisfied;
};

struct FeasibilityOutcome {
  Verdict verdict = Verdict::Indeterminate;
  Endpoint endpoint = Endpoint::Lo;
  std::optional<AtomMeasure> witness;
  std::vector<Rational> certificate;  // empty unless infeasible
  bool certificate_verified = false;
  Rational margin{0};
  std::vector<ConstraintCheck> trace;  // populated for feasible outcomes
};

struct SolveOptions {
  bool compute_margin = true;
};

// Exact phase-1 simplex over the atom simplex with every target taken at
// `endpoint`. A feasible verdict carries a witness that has been re-checked
// against every constraint; an infeasible verdict carries a Farkas certificate
// that verify_certificate() accepts. Only standard scenarios are accepted.
FeasibilityOutcome solve(const Scenario& scenario, Endpoint endpoint, SolveOptions options = {});

struct RobustOutcome {
  Verdict verdict;
  FeasibilityOutcome lo;
  FeasibilityOutcome hi;
};

// Solves at both endpoints; differing verdicts give Indeterminate.
RobustOutcome solve_robust(const Scenario& scenario, SolveOptions options = {});

// Smallest t >= 0 for which every constraint relaxed by t is feasible.
Rational margin(const Scenario& scenario, Endpoint endpoint);

// Throws InputError when the certificate length is not constraints + 1.
bool verify_certificate(const Scenario& scenario, Endpoint endpoint,
                        const std::vector<Rational>& certificate);

struct GridMismatch {
  Rational p;
  Rational q;
  Verdict lp;
  bool closed_form_feasible;
};

struct GridReport {
  std::size_t points = 0;
  std::vector<GridMismatch> mismatches;
};

// Compares solve() with the closed-form inequalities on the symmetric
// scenarios E(A)=E(B)=E(C)=2p-1, E(ABC)=2q-1, for p, q on the uniform grid
// {0, 1/(n-1), ..., 1}. Mismatches are listed in grid order.
GridReport oracle_grid_agreement(std::size_t points_per_axis, std::size_t threads = 0);

// Worker count: CONTEXTUALITY_KIT_THREADS if set, else hardware concurrency.
std::size_t default_worker_count();

}  // namespace ctxkit
