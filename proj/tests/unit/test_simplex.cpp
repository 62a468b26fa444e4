#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctxkit/simplex.hpp"
#include "support.hpp"

using namespace ctxkit;
using namespace ctxkit::lp;

namespace {

LinearProgram random_program(testkit::Gen& gen, std::size_t vars, std::size_t rows) {
  LinearProgram lp;
  lp.variable_count = vars;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Rational> a(vars);
    for (auto& x : a) x = gen.integer(-3, 3);
    auto rel = static_cast<Relation>(gen.integer(0, 2));
    lp.add_row(a, rel, gen.integer(-4, 4));
  }
  return lp;
}

}  // namespace

TEST_CASE("small programs") {
  LinearProgram lp;
  lp.variable_count = 2;
  lp.add_row({1, 1}, Relation::Eq, 1);
  lp.add_row({1, -1}, Relation::Ge, Rational(1, 2));
  Result r = solve(lp);
  REQUIRE(r.status == Status::Optimal);
  CHECK(satisfies(lp, r.x));

  lp.objective = {0, 1};
  r = solve(lp);
  REQUIRE(r.status == Status::Optimal);
  CHECK(r.objective == 0);

  lp.objective = {0, -1};
  r = solve(lp);
  REQUIRE(r.status == Status::Optimal);
  CHECK(r.objective == Rational(-1, 4));
  CHECK(r.x[0] == Rational(3, 4));

  LinearProgram unbounded;
  unbounded.variable_count = 1;
  unbounded.add_row({1}, Relation::Ge, 1);
  unbounded.objective = {-1};
  CHECK(solve(unbounded).status == Status::Unbounded);
}

TEST_CASE("infeasible program yields a Farkas certificate") {
  LinearProgram lp;
  lp.variable_count = 2;
  lp.add_row({1, 1}, Relation::Le, 1);
  lp.add_row({1, 1}, Relation::Ge, 2);
  Result r = solve(lp);
  REQUIRE(r.status == Status::Infeasible);
  CHECK(verify_farkas(lp, r.farkas));
  CHECK(r.farkas[0] <= 0);
  CHECK(r.farkas[1] >= 0);
}

TEST_CASE("feasibility agrees with Fourier-Motzkin") {
  testkit::Gen gen(31);
  int feasible = 0;
  int infeasible = 0;
  for (int i = 0; i < 1500; ++i) {
    std::size_t vars = static_cast<std::size_t>(gen.integer(1, 4));
    std::size_t rows = static_cast<std::size_t>(gen.integer(1, 4));
    LinearProgram lp = random_program(gen, vars, rows);
    Result r = solve(lp);
    bool oracle = testkit::fm_feasible(lp);
    REQUIRE(r.status != Status::Unbounded);
    CHECK((r.status == Status::Optimal) == oracle);
    if (r.status == Status::Optimal) {
      ++feasible;
      CHECK(satisfies(lp, r.x));
    } else {
      ++infeasible;
      CHECK(verify_farkas(lp, r.farkas));
    }
  }
  // both branches exercised
  CHECK(feasible > 100);
  CHECK(infeasible > 100);
}

TEST_CASE("certificate mutations are rejected") {
  testkit::Gen gen(32);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 200; ++i) {
    LinearProgram lp = random_program(gen, 3, 3);
    Result r = solve(lp);
    if (r.status != Status::Infeasible) continue;
    ++checked;
    REQUIRE(verify_farkas(lp, r.farkas));
    std::vector<Rational> scaled = r.farkas;
    for (auto& y : scaled) y *= 3;
    CHECK(verify_farkas(lp, scaled));
    std::vector<Rational> flipped = r.farkas;
    for (auto& y : flipped) y = -y;
    CHECK(!verify_farkas(lp, flipped));
    CHECK(!verify_farkas(lp, std::vector<Rational>(lp.rows.size(), Rational(0))));
    std::vector<Rational> shorter(r.farkas.begin(), r.farkas.end() - 1);
    CHECK(!verify_farkas(lp, shorter));
  }
  CHECK(checked == 200);
}

TEST_CASE("determinism") {
  testkit::Gen gen(33);
  for (int i = 0; i < 200; ++i) {
    LinearProgram lp = random_program(gen, 4, 3);
    Result a = solve(lp);
    Result b = solve(lp);
    CHECK(a.status == b.status);
    CHECK(a.x == b.x);
    CHECK(a.farkas == b.farkas);
  }
}

TEST_CASE("lexicographic objectives") {
  LinearProgram lp;
  lp.variable_count = 3;
  lp.add_row({1, 1, 1}, Relation::Eq, 1);
  // maximize x0 + x1, then minimize x0
  Result r = solve_lexicographic(lp, {{{1, 1, 0}, Sense::Maximize}, {{1, 0, 0}, Sense::Minimize}});
  REQUIRE(r.status == Status::Optimal);
  CHECK(r.x == std::vector<Rational>{0, 1, 0});
  CHECK(r.objective == 0);
  Result best = solve_lexicographic(lp, {{{1, 2, 3}, Sense::Maximize}});
  CHECK(best.objective == 3);
}

TEST_CASE("degenerate programs terminate") {
  // Redundant equalities and a degenerate vertex.
  LinearProgram lp;
  lp.variable_count = 4;
  lp.add_row({1, 1, 1, 1}, Relation::Eq, 1);
  lp.add_row({2, 2, 2, 2}, Relation::Eq, 2);
  lp.add_row({1, -1, 0, 0}, Relation::Eq, 0);
  lp.add_row({0, 0, 1, -1}, Relation::Eq, 0);
  lp.add_row({1, 0, 1, 0}, Relation::Le, Rational(1, 2));
  lp.objective = {-1, 0, -2, 0};
  Result r = solve(lp);
  REQUIRE(r.status == Status::Optimal);
  CHECK(satisfies(lp, r.x));
  CHECK(r.objective == -1);
}
