#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ctxkit/closed_form.hpp"
#include "ctxkit/errors.hpp"
#include "ctxkit/feasibility.hpp"
#include "ctxkit/value_expr.hpp"
#include "support.hpp"

using namespace ctxkit;

namespace {

MomentConstraint exact(std::vector<std::string> subset, const Rational& v, lp::Relation rel = lp::Relation::Eq) {
  return {std::move(subset), rel, ScalarInterval(v), to_string(v)};
}

Scenario pairwise(const Rational& xy, const Rational& xz, const Rational& yz, lp::Relation rel = lp::Relation::Eq) {
  return Scenario(EventSpace({"X", "Y", "Z"}),
                  {exact({"X", "Y"}, xy, rel), exact({"X", "Z"}, xz, rel), exact({"Y", "Z"}, yz, rel)});
}

// Three +/-1 variables: pairwise moments are realizable iff
// 1 + s1 xy + s2 xz + s3 yz >= 0 for every sign pattern with s1 s2 s3 = 1.
bool triangle_feasible(const Rational& xy, const Rational& xz, const Rational& yz) {
  return 1 + xy + xz + yz >= 0 && 1 + xy - xz - yz >= 0 && 1 - xy + xz - yz >= 0 && 1 - xy - xz + yz >= 0;
}

}  // namespace

TEST_CASE("scenario validation") {
  EventSpace s({"A", "B"});
  CHECK_THROWS_AS(Scenario(s, {exact({"A", "B"}, 0), exact({"B", "A"}, 0)}), InputError);
  CHECK_THROWS_AS(Scenario(s, {exact({"C"}, 0)}), InputError);
  CHECK_THROWS_AS(Scenario(s, {exact({"A", "A"}, 0)}), InputError);
  CHECK_THROWS_AS(Scenario(s, {exact({}, 0)}), InputError);
  Scenario ok(s, {exact({"A"}, Rational(1, 2))});
  CHECK(ok.exact());
  CHECK(ok.row_labels() == std::vector<std::string>{"sum", "E(A)"});
  CHECK(parse_relation("ge") == lp::Relation::Ge);
  CHECK_THROWS_AS(parse_relation("gt"), InputError);
  CHECK_THROWS_AS(parse_scenario_kind("classical"), InputError);
}

TEST_CASE("GHZ scenario is infeasible with a verified certificate") {
  Scenario ghz = ghz_scenario({1, 1, 1, -1});
  FeasibilityOutcome out = solve(ghz, Endpoint::Lo);
  CHECK(out.verdict == Verdict::Infeasible);
  CHECK(out.certificate_verified);
  CHECK(verify_certificate(ghz, Endpoint::Lo, out.certificate));
  CHECK(out.margin == Rational(1, 2));
  CHECK(!out.witness);
  auto mutated = out.certificate;
  mutated[0] += 5;
  CHECK(!verify_certificate(ghz, Endpoint::Lo, mutated));
  CHECK_THROWS_AS(verify_certificate(ghz, Endpoint::Lo, {1, 2}), InputError);
}

TEST_CASE("feasible witness reproduces the constraints") {
  Scenario s = ghz_scenario({Rational(1, 2), Rational(1, 3), 0, Rational(-1, 5)});
  FeasibilityOutcome out = solve(s, Endpoint::Lo);
  REQUIRE(out.verdict == Verdict::Feasible);
  REQUIRE(out.witness);
  CHECK(validate(*out.witness).passed());
  CHECK(expectation(*out.witness, {"A"}) == Rational(1, 2));
  CHECK(expectation(*out.witness, {"A", "B", "C"}) == Rational(-1, 5));
  CHECK(out.trace.size() == 4);
  CHECK(out.margin == 0);
}

TEST_CASE("pairwise scenarios agree with the triangle inequalities") {
  testkit::Gen gen(41);
  int infeasible = 0;
  for (int i = 0; i < 400; ++i) {
    Rational xy = gen.in_range(-1, 1, 24), xz = gen.in_range(-1, 1, 24), yz = gen.in_range(-1, 1, 24);
    FeasibilityOutcome out = solve(pairwise(xy, xz, yz), Endpoint::Lo, {.compute_margin = false});
    bool oracle = triangle_feasible(xy, xz, yz);
    CHECK((out.verdict == Verdict::Feasible) == oracle);
    if (!oracle) ++infeasible;
  }
  CHECK(infeasible > 20);
}

TEST_CASE("margin of the singlet correlations") {
  const Rational tol = default_bracket_tolerance();
  BellMoments m{evaluate_text("-sqrt(3)/2", tol), evaluate_text("-sqrt(3)/2", tol), ScalarInterval(Rational(-1, 2))};
  Scenario bell = bell_scenario(m);
  const double expected = (std::sqrt(3.0) - 0.5) / 3.0;
  for (Endpoint e : {Endpoint::Lo, Endpoint::Hi}) {
    Rational t = margin(bell, e);
    CHECK(std::abs(to_double(t) - expected) < 1e-9);

    // Bisection on t with the triangle inequalities, trying the corners of the
    // relaxation box; only one face is violated here, so a corner is optimal.
    const Rational xy = m.xy.lo(), xz = m.xz.lo(), yz = m.yz.lo();
    Rational lo = 0, hi = 1;
    while (hi - lo > Rational(1, 1000000000000LL)) {
      Rational mid = (lo + hi) / 2;
      bool ok = false;
      for (int a = -1; a <= 1 && !ok; a += 2)
        for (int b = -1; b <= 1 && !ok; b += 2)
          for (int c = -1; c <= 1 && !ok; c += 2) ok = triangle_feasible(xy + a * mid, xz + b * mid, yz + c * mid);
      (ok ? hi : lo) = mid;
    }
    CHECK(std::abs(to_double(lo) - to_double(margin(bell, Endpoint::Lo))) < 1e-9);
  }
}

TEST_CASE("margin is the relaxation threshold") {
  testkit::Gen gen(42);
  for (int i = 0; i < 60; ++i) {
    GhzMoments g{gen.in_range(-1, 1, 10), gen.in_range(-1, 1, 10), gen.in_range(-1, 1, 10), gen.in_range(-1, 1, 10)};
    Scenario s = ghz_scenario(g);
    Rational t = margin(s, Endpoint::Lo);
    // Relaxed system written directly as an atom LP with a two-sided band per moment.
    auto relaxed = [&](const Rational& slack) {
      lp::LinearProgram prog;
      prog.variable_count = 8;
      prog.add_row(std::vector<Rational>(8, Rational(1)), lp::Relation::Eq, 1);
      for (const auto& c : s.constraints()) {
        std::vector<Rational> row(8);
        for (std::size_t a = 0; a < 8; ++a) {
          int sign = 1;
          for (const auto& v : c.subset) sign *= s.space().sign(a, s.space().variable_index(v));
          row[a] = sign;
        }
        prog.add_row(row, lp::Relation::Ge, c.target.lo() - slack);
        prog.add_row(row, lp::Relation::Le, c.target.lo() + slack);
      }
      return lp::solve(prog).status == lp::Status::Optimal;
    };
    CHECK(relaxed(t));
    if (t > 0) CHECK(!relaxed(t * Rational(99, 100)));
    CHECK((t == 0) == ghz_inequalities(g).passed);
  }
}

TEST_CASE("enlarging targets never loses feasibility") {
  testkit::Gen gen(43);
  for (int i = 0; i < 200; ++i) {
    Rational v = gen.in_range(-1, 1, 12), w = gen.in_range(-1, 1, 12);
    Scenario tight(EventSpace({"A", "B"}),
                   {exact({"A"}, v, lp::Relation::Le), exact({"A", "B"}, w, lp::Relation::Ge)});
    Scenario loose(EventSpace({"A", "B"}), {exact({"A"}, v + Rational(gen.integer(0, 4), 4), lp::Relation::Le),
                                            exact({"A", "B"}, w - Rational(gen.integer(0, 4), 4), lp::Relation::Ge)});
    if (solve(tight, Endpoint::Lo, {.compute_margin = false}).verdict == Verdict::Feasible) {
      CHECK(solve(loose, Endpoint::Lo, {.compute_margin = false}).verdict == Verdict::Feasible);
    }
  }
}

TEST_CASE("robust verdict across endpoints") {
  // E(A) in a bracket straddling the boundary value 1.
  EventSpace s({"A"});
  MomentConstraint c{{"A"}, lp::Relation::Eq, ScalarInterval(Rational(999, 1000), Rational(1001, 1000)), "~1"};
  RobustOutcome r = solve_robust(Scenario(s, {c}));
  CHECK(r.lo.verdict == Verdict::Feasible);
  CHECK(r.hi.verdict == Verdict::Infeasible);
  CHECK(r.verdict == Verdict::Indeterminate);
  RobustOutcome ghz = solve_robust(ghz_scenario({1, 1, 1, -1}));
  CHECK(ghz.verdict == Verdict::Infeasible);
  CHECK(ghz.hi.endpoint == Endpoint::Hi);
}

TEST_CASE("nonstandard scenarios are refused by the LP engine") {
  Scenario lower = ghz_premises(ScenarioKind::Lower);
  CHECK_THROWS_AS(solve(lower, Endpoint::Lo), InputError);
  CHECK_THROWS_AS(margin(lower, Endpoint::Lo), InputError);
}

TEST_CASE("grid agreement is independent of the worker count") {
  GridReport one = oracle_grid_agreement(21, 1);
  GridReport many = oracle_grid_agreement(21, 4);
  CHECK(one.points == 441);
  CHECK(many.points == 441);
  CHECK(one.mismatches.empty());
  CHECK(many.mismatches.empty());
  CHECK(default_worker_count() >= 1);
}

TEST_CASE("identical input gives identical outcome") {
  Scenario s = ghz_scenario({Rational(1, 3), Rational(1, 3), Rational(1, 3), 0});
  FeasibilityOutcome a = solve(s, Endpoint::Lo);
  FeasibilityOutcome b = solve(s, Endpoint::Lo);
  REQUIRE(a.witness);
  CHECK(a.witness->values == b.witness->values);
}
