#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "ctxkit/closed_form.hpp"
#include "ctxkit/errors.hpp"

namespace ctxkit {

namespace {

constexpr std::size_t kMaxSymmetrizedVariables = 8;

struct ForcedEvent {
  std::string variable;
  int sign;  // the sign event with value 1; its complement has value 0
};

using ConstraintKey = std::tuple<std::vector<std::size_t>, lp::Relation, Rational>;

std::set<ConstraintKey> constraint_keys(const Scenario& scenario, const std::vector<std::size_t>& perm) {
  std::set<ConstraintKey> keys;
  for (const auto& c : scenario.constraints()) {
    auto vars = scenario.space().resolve_subset(c.subset);
    for (auto& v : vars) v = perm[v];
    std::sort(vars.begin(), vars.end());
    keys.emplace(std::move(vars), c.relation, c.target.lo());
  }
  return keys;
}

// Variable permutations mapping the constraint set onto itself.
std::vector<std::vector<std::size_t>> scenario_symmetries(const Scenario& scenario) {
  const std::size_t n = scenario.space().variable_count();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n > kMaxSymmetrizedVariables) return {perm};
  const auto reference = constraint_keys(scenario, perm);
  std::vector<std::vector<std::size_t>> out;
  do {
    if (constraint_keys(scenario, perm) == reference) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::size_t permute_atom(const EventSpace& space, std::size_t atom, const std::vector<std::size_t>& perm) {
  const std::size_t n = space.variable_count();
  std::size_t out = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (space.sign(atom, v) < 0) out |= std::size_t{1} << (n - 1 - perm[v]);
  }
  return out;
}

std::vector<Rational> symmetrize(const EventSpace& space, const std::vector<Rational>& values,
                                 const std::vector<std::vector<std::size_t>>& group) {
  std::vector<Rational> out(values.size(), 0);
  for (const auto& perm : group) {
    for (std::size_t a = 0; a < values.size(); ++a) out[permute_atom(space, a, perm)] += values[a];
  }
  for (auto& v : out) v /= static_cast<long>(group.size());
  return out;
}

std::string prob_symbol(ScenarioKind kind) { return kind == ScenarioKind::Lower ? "P_*" : "P*"; }
std::string exp_symbol(ScenarioKind kind) { return kind == ScenarioKind::Lower ? "E_*" : "E*"; }

std::string sign_event_name(const std::string& variable, int sign) {
  return variable + (sign > 0 ? "=+1" : "=-1");
}

}  // namespace

NonadditiveWitness solve_nonadditive(const Scenario& scenario) {
  const ScenarioKind kind = scenario.kind();
  if (kind == ScenarioKind::Standard) throw InputError("standard scenarios go to the LP engine");
  const bool lower = kind == ScenarioKind::Lower;
  const EventSpace& space = scenario.space();
  const std::size_t atoms = space.atom_count();
  const lp::Relation bound = lower ? lp::Relation::Le : lp::Relation::Ge;

  std::vector<ForcedEvent> forced;
  std::vector<const MomentConstraint*> products;
  for (const auto& c : scenario.constraints()) {
    if (c.relation != lp::Relation::Eq || !c.target.is_exact()) {
      throw InputError("nonadditive scenarios take exact equality constraints only");
    }
    if (c.subset.size() == 1) {
      const Rational& t = c.target.lo();
      if (t != 1 && t != -1) {
        throw InputError("single-variable moment E(" + c.subset[0] + ") must be +1 or -1 in a " + to_string(kind) +
                         " scenario");
      }
      forced.push_back({c.subset[0], t > 0 ? 1 : -1});
    } else {
      products.push_back(&c);
    }
  }

  lp::LinearProgram program;
  program.variable_count = atoms;
  for (const auto& f : forced) {
    EventMask event = space.sign_event(f.variable, f.sign);
    std::vector<Rational> row(atoms, 0);
    for (std::size_t a : event.indices()) row[a] = 1;
    program.add_row(row, bound, 1);
  }
  for (const auto* c : products) {
    auto coeffs = space.moment_coefficients(c->subset);
    program.add_row(std::vector<Rational>(coeffs.begin(), coeffs.end()), lp::Relation::Eq, c->target.lo());
  }
  const std::vector<Rational> ones(atoms, Rational(1));
  program.add_row(ones, bound, 1);
  for (std::size_t a = 0; a < atoms; ++a) {
    std::vector<Rational> unit(atoms, 0);
    unit[a] = 1;
    program.add_row(unit, lp::Relation::Le, 1);
  }

  if (lp::solve(program).status != lp::Status::Optimal) {
    throw NoWitnessError("no " + to_string(kind) + " atom assignment satisfies the constraints");
  }

  NonadditiveWitness out{AtomMeasure(space, std::vector<Rational>(atoms, Rational(0)),
                                     lower ? AtomKind::LowerAtoms : AtomKind::UpperAtoms),
                         PartialSetFunction(space, lower ? SetFunctionKind::Lower : SetFunctionKind::Upper),
                         {},
                         {}};

  for (std::size_t a = 0; a < atoms; ++a) {
    std::vector<Rational> unit(atoms, 0);
    unit[a] = 1;
    lp::Result r = lp::solve_lexicographic(program, {{unit, lp::Sense::Maximize}});
    if (r.status == lp::Status::Optimal && r.objective == 0) out.forced_zero_atoms.push_back(space.signature(a));
  }

  std::vector<lp::Objective> order{{ones, lower ? lp::Sense::Maximize : lp::Sense::Minimize}};
  for (std::size_t a = 0; a < atoms; ++a) {
    std::vector<Rational> unit(atoms, 0);
    unit[a] = 1;
    order.push_back({unit, lower ? lp::Sense::Maximize : lp::Sense::Minimize});
  }
  lp::Result chosen = lp::solve_lexicographic(program, order);
  if (chosen.status != lp::Status::Optimal) throw InternalError("nonadditive canonical selection failed");
  std::vector<Rational> values = symmetrize(space, chosen.x, scenario_symmetries(scenario));
  if (!lp::satisfies(program, values)) throw InternalError("symmetrized witness violates the constraints");
  out.atoms.values = values;

  auto& sf = out.set_function;
  sf.set(space.empty_event(), 0);
  sf.set(space.sample_space(), 1);
  for (std::size_t a = 0; a < atoms; ++a) sf.set(space.atom_event(a), values[a]);
  for (const auto& f : forced) {
    sf.set(space.sign_event(f.variable, f.sign), 1);
    sf.set(space.sign_event(f.variable, -f.sign), 0);
  }

  // Verification trace, recomputed from the atom values.
  auto& checks = out.checks;
  const std::string P = prob_symbol(kind);
  const std::string E = exp_symbol(kind);
  const std::string cmp = lower ? " <= " : " >= ";
  for (const auto& f : forced) {
    Rational e = event_expectation(sf, f.variable);
    checks.push_back({E + "(" + f.variable + ") = " + P + "(" + f.variable + "=+1) - " + P + "(" + f.variable + "=-1)",
                      to_string(e), e == f.sign});
    Rational mass = out.atoms.mass(space.sign_event(f.variable, f.sign));
    bool ok = lower ? mass <= 1 : mass >= 1;
    checks.push_back({"atom sum over " + sign_event_name(f.variable, f.sign) + cmp + P + "(" +
                          sign_event_name(f.variable, f.sign) + ") = 1",
                      to_string(mass), ok});
  }
  for (const auto* c : products) {
    Rational s = signed_atom_sum(out.atoms, c->subset);
    checks.push_back({E + "(" + moment_label(c->subset) + ") as signed atom sum = " + to_string(c->target.lo()),
                      to_string(s), s == c->target.lo()});
  }
  Rational total = out.atoms.total();
  checks.push_back({"total atom mass" + cmp + "1", to_string(total), lower ? total <= 1 : total >= 1});
  ValidationReport atom_report = validate(out.atoms);
  checks.push_back({"atom values valid as " + to_string(out.atoms.kind), std::to_string(atom_report.violations.size()) + " violations",
                    atom_report.passed()});
  ValidationReport sf_report = validate(sf);
  checks.push_back({"set function satisfies axioms (i)-(iv) on its domain",
                    std::to_string(sf_report.violations.size()) + " violations", sf_report.passed()});
  if (!all_hold(checks)) throw InternalError("nonadditive witness fails its own verification");
  return out;
}

Scenario ghz_premises(ScenarioKind kind) {
  auto exact = [](std::vector<std::string> subset, int value) {
    return MomentConstraint{std::move(subset), lp::Relation::Eq, ScalarInterval(Rational(value)),
                            std::to_string(value)};
  };
  return Scenario(EventSpace({"A", "B", "C"}),
                  {exact({"A"}, 1), exact({"B"}, 1), exact({"C"}, 1), exact({"A", "B", "C"}, -1)}, kind);
}

NonadditiveWitness lower_ghz_solve() {
  NonadditiveWitness w = solve_nonadditive(ghz_premises(ScenarioKind::Lower));
  const EventSpace& space = w.atoms.space;

  // The atoms with ABC = +1 are forced to zero, and the rest then carry mass exactly 1.
  std::vector<std::string> expected_zeros;
  Rational remaining = 0;
  auto abc = space.moment_coefficients({"A", "B", "C"});
  for (std::size_t a = 0; a < space.atom_count(); ++a) {
    if (abc[a] > 0) {
      expected_zeros.push_back(space.signature(a));
    } else {
      remaining += w.atoms.values[a];
    }
  }
  w.checks.push_back({"forced zeros are exactly the ABC=+1 atoms", "", w.forced_zero_atoms == expected_zeros});
  w.checks.push_back({"P_*(-++) + P_*(+-+) + P_*(++-) + P_*(---) = 1", to_string(remaining), remaining == 1});
  if (!all_hold(w.checks)) throw InternalError("lower GHZ witness fails its derivation checks");
  return w;
}

NonadditiveWitness upper_ghz_solve() { return solve_nonadditive(ghz_premises(ScenarioKind::Upper)); }

}  // namespace ctxkit
