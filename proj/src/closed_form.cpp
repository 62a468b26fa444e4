#include "ctxkit/closed_form.hpp"

#include <algorithm>

#include "ctxkit/errors.hpp"

namespace ctxkit {

bool all_hold(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds; });
}

Rational ghz_F(const GhzMoments& m) { return m.a + m.b + m.c - m.abc; }

GhzInequalityResult ghz_inequalities(const GhzMoments& m) {
  static constexpr int kSigns[4][4] = {{1, 1, 1, -1}, {-1, 1, 1, 1}, {1, -1, 1, 1}, {1, 1, -1, 1}};
  GhzInequalityResult result;
  for (int k = 0; k < 4; ++k) {
    Rational s = kSigns[k][0] * m.a + kSigns[k][1] * m.b + kSigns[k][2] * m.c + kSigns[k][3] * m.abc;
    result.sums[k] = s;
    if (result.passed && (s < -2 || s > 2)) {
      result.passed = false;
      result.violated = k + 1;
      result.value = s;
    }
  }
  return result;
}

namespace {

MomentConstraint exact_constraint(std::vector<std::string> subset, lp::Relation rel, const Rational& value) {
  return {std::move(subset), rel, ScalarInterval(value), to_string(value)};
}

EventSpace abc_space() { return EventSpace({"A", "B", "C"}); }

}  // namespace

Scenario ghz_scenario(const GhzMoments& m) {
  return Scenario(abc_space(), {exact_constraint({"A"}, lp::Relation::Eq, m.a),
                                exact_constraint({"B"}, lp::Relation::Eq, m.b),
                                exact_constraint({"C"}, lp::Relation::Eq, m.c),
                                exact_constraint({"A", "B", "C"}, lp::Relation::Eq, m.abc)});
}

SymmetricConstruction symmetric_construct(const SymmetricParams& params) {
  const Rational& p = params.p;
  const Rational& q = params.q;
  if (p < 0 || p > 1 || q < 0 || q > 1) throw NoWitnessError("p and q must lie in [0,1]");
  Rational gap = 3 * p - q;
  if (gap < 0 || gap > 2) {
    throw NoWitnessError("3p - q = " + to_string(gap) + " lies outside [0,2]; no joint distribution exists");
  }
  Rational lambda = gap / 2;  // weight of the 3p = q + 2 boundary distribution
  SymmetricWitness w{lambda * (1 - q) / 3, (1 - lambda) * q / 3, lambda * q, (1 - lambda) * (1 - q)};

  EventSpace space = abc_space();
  std::vector<Rational> atoms(space.atom_count());
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    int minus = 0;
    for (std::size_t v = 0; v < 3; ++v) minus += space.sign(a, v) < 0;
    atoms[a] = minus == 0 ? w.z : minus == 1 ? w.x : minus == 2 ? w.y : w.w;
  }
  AtomMeasure measure(space, std::move(atoms));
  bool ok = validate(measure).passed();
  for (const char* v : {"A", "B", "C"}) ok = ok && expectation(measure, {v}) == 2 * p - 1;
  ok = ok && expectation(measure, {"A", "B", "C"}) == 2 * q - 1;
  if (!ok) throw InternalError("symmetric construction does not reproduce its moments");
  return {w, std::move(measure)};
}

Scenario symmetric_scenario(const SymmetricParams& params) {
  Rational e = 2 * params.p - 1;
  return ghz_scenario({e, e, e, 2 * params.q - 1});
}

EpsilonResult epsilon_feasible(const Rational& eps) {
  if (eps < 0 || eps > 1) throw InputError("epsilon must lie in [0,1], got " + to_string(eps));
  Rational F = ghz_F({1 - eps, 1 - eps, 1 - eps, -1 + eps});
  return {F <= 2, F};
}

Scenario epsilon_scenario(const Rational& eps) {
  if (eps < 0 || eps > 1) throw InputError("epsilon must lie in [0,1], got " + to_string(eps));
  return Scenario(abc_space(), {exact_constraint({"A"}, lp::Relation::Ge, 1 - eps),
                                exact_constraint({"B"}, lp::Relation::Ge, 1 - eps),
                                exact_constraint({"C"}, lp::Relation::Ge, 1 - eps),
                                exact_constraint({"A", "B", "C"}, lp::Relation::Le, -1 + eps)});
}

MerminValues mermin_values(const MerminAssignment& s) {
  return {s.sx[0] * s.sy[1] * s.sy[2], s.sy[0] * s.sx[1] * s.sy[2], s.sy[0] * s.sy[1] * s.sx[2],
          s.sx[0] * s.sx[1] * s.sx[2]};
}

MerminResult mermin_assignment_check() {
  MerminResult result;
  for (unsigned bits = 0; bits < 64; ++bits) {
    MerminAssignment s;
    for (int i = 0; i < 3; ++i) {
      s.sx[i] = (bits >> (2 * i)) & 1U ? -1 : 1;
      s.sy[i] = (bits >> (2 * i + 1)) & 1U ? -1 : 1;
    }
    MerminValues v = mermin_values(s);
    ++result.assignments;
    if (v.a == 1 && v.b == 1 && v.c == 1 && v.d == -1) ++result.satisfying;
    if (v.a * v.b * v.c == v.d) ++result.identity_holds;
  }
  return result;
}

// ---------------------------------------------------------------------------

const std::array<std::string, 6>& conditional_names() {
  static const std::array<std::string, 6> names{"E(XY|Z=+1)", "E(XY|Z=-1)", "E(XZ|Y=+1)",
                                                "E(XZ|Y=-1)", "E(YZ|X=+1)", "E(YZ|X=-1)"};
  return names;
}

Scenario bell_scenario(const BellMoments& m) {
  auto pair = [](std::vector<std::string> subset, const ScalarInterval& v) {
    return MomentConstraint{std::move(subset), lp::Relation::Eq, v, to_string(v)};
  };
  return Scenario(EventSpace({"X", "Y", "Z"}),
                  {exact_constraint({"X"}, lp::Relation::Eq, 0), exact_constraint({"Y"}, lp::Relation::Eq, 0),
                   exact_constraint({"Z"}, lp::Relation::Eq, 0), pair({"X", "Y"}, m.xy), pair({"X", "Z"}, m.xz),
                   pair({"Y", "Z"}, m.yz)});
}

namespace {

struct PairTargets {
  Rational xy;
  Rational xz;
  Rational yz;
};

PairTargets at(const BellMoments& m, Endpoint e) {
  auto pick = [e](const ScalarInterval& v) { return e == Endpoint::Lo ? v.lo() : v.hi(); };
  return {pick(m.xy), pick(m.xz), pick(m.yz)};
}

// Unknowns shifted to v = u + 1 so that the box [-1,1] becomes 0 <= v <= 2.
lp::LinearProgram conditional_program(const PairTargets& t, lp::Relation pair_relation) {
  lp::LinearProgram program;
  program.variable_count = 6;
  auto row = [](std::initializer_list<std::pair<int, int>> terms) {
    std::vector<Rational> r(6, 0);
    for (auto [index, coeff] : terms) r[index] = coeff;
    return r;
  };
  program.add_row(row({{0, 1}, {1, 1}}), pair_relation, 2 * t.xy + 2);
  program.add_row(row({{2, 1}, {3, 1}}), pair_relation, 2 * t.xz + 2);
  program.add_row(row({{4, 1}, {5, 1}}), pair_relation, 2 * t.yz + 2);
  program.add_row(row({{0, 1}, {4, -1}}), lp::Relation::Eq, 0);
  program.add_row(row({{1, 1}, {5, -1}}), lp::Relation::Eq, 0);
  for (int k = 0; k < 6; ++k) program.add_row(row({{k, 1}}), lp::Relation::Le, 2);
  return program;
}

SixConditionals unshift(const std::vector<Rational>& v) {
  SixConditionals out;
  for (int k = 0; k < 6; ++k) out[k] = v[k] - 1;
  return out;
}

}  // namespace

BellSystemResult bell_conditional_solve(const BellMoments& m, Endpoint endpoint) {
  BellSystemResult result;
  result.endpoint = endpoint;
  PairTargets t = at(m, endpoint);

  lp::Result linear = lp::solve(conditional_program(t, lp::Relation::Eq));
  if (linear.status == lp::Status::Optimal) {
    SixConditionals balanced{t.xy, t.xy, t.xz, t.xz, t.yz, t.yz};
    std::vector<Rational> shifted(6);
    for (int k = 0; k < 6; ++k) shifted[k] = balanced[k] + 1;
    if (!lp::satisfies(conditional_program(t, lp::Relation::Eq), shifted)) {
      throw InternalError("balanced conditional solution fails the linear system");
    }
    result.linear_stage_solved = true;
    result.linear_detail = "solved; balanced solution returned";
    result.conditionals = balanced;
  } else if (t.xy != t.yz) {
    result.linear_detail = "inconsistent: the symmetry equalities force E(XY) = E(YZ), but " + to_string(t.xy) +
                           " != " + to_string(t.yz);
  } else {
    result.linear_detail = "inconsistent: no solution with every conditional in [-1,1]";
  }

  result.realizability = solve(bell_scenario(m), endpoint);
  return result;
}

UpperBellResult upper_bell_solve(const BellMoments& m, Endpoint endpoint) {
  PairTargets t = at(m, endpoint);
  lp::LinearProgram base = conditional_program(t, lp::Relation::Le);
  std::vector<Rational> sum(6, Rational(1));

  lp::Result best = lp::solve_lexicographic(base, {{sum, lp::Sense::Maximize}});
  if (best.status != lp::Status::Optimal) throw InternalError("upper conditional system is infeasible");

  lp::LinearProgram balanced = base;
  for (int k = 0; k < 6; k += 2) {
    std::vector<Rational> r(6, 0);
    r[k] = 1;
    r[k + 1] = -1;
    balanced.add_row(r, lp::Relation::Eq, 0);
  }
  balanced.add_row(sum, lp::Relation::Eq, best.objective);
  lp::Result chosen = lp::solve(balanced);
  if (chosen.status != lp::Status::Optimal) {
    std::vector<lp::Objective> order{{sum, lp::Sense::Maximize}};
    for (int k = 0; k < 6; ++k) {
      std::vector<Rational> unit(6, 0);
      unit[k] = 1;
      order.push_back({unit, lp::Sense::Minimize});
    }
    chosen = lp::solve_lexicographic(base, order);
  }

  UpperBellResult result;
  result.endpoint = endpoint;
  result.values = unshift(chosen.x);
  const auto& u = result.values;
  const auto& names = conditional_names();
  auto pair_check = [&](const char* moment, const Rational& target, int k) {
    Rational s = u[k] + u[k + 1];
    result.checks.push_back({std::string("2E*(") + moment + ") >= " + names[k] + " + " + names[k + 1],
                             to_string(2 * target) + " >= " + to_string(s), 2 * target >= s});
  };
  pair_check("XY", t.xy, 0);
  pair_check("XZ", t.xz, 2);
  pair_check("YZ", t.yz, 4);
  result.checks.push_back({names[0] + " = " + names[4], to_string(u[0]) + " = " + to_string(u[4]), u[0] == u[4]});
  result.checks.push_back({names[1] + " = " + names[5], to_string(u[1]) + " = " + to_string(u[5]), u[1] == u[5]});
  for (int k = 0; k < 6; ++k) {
    Rational up = (1 + u[k]) / 2;
    Rational down = (1 - u[k]) / 2;
    bool in_box = u[k] >= -1 && u[k] <= 1;
    result.checks.push_back({names[k] + " in [-1,1], implied upper probabilities sum >= 1",
                             to_string(up) + " + " + to_string(down), in_box && up + down >= 1});
  }
  if (!result.verified()) throw InternalError("upper conditional solution fails substitution");
  return result;
}

}  // namespace ctxkit
