#include "ctxkit/feasibility.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <set>
#include <thread>

#include "ctxkit/closed_form.hpp"
#include "ctxkit/errors.hpp"

namespace ctxkit {

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Standard:
      return "standard";
    case ScenarioKind::Lower:
      return "lower";
    case ScenarioKind::Upper:
      return "upper";
  }
  return "?";
}

std::string to_string(Endpoint endpoint) { return endpoint == Endpoint::Lo ? "lo" : "hi"; }

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Feasible:
      return "feasible";
    case Verdict::Infeasible:
      return "infeasible";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(const std::string& text) {
  if (text == "standard") return ScenarioKind::Standard;
  if (text == "lower") return ScenarioKind::Lower;
  if (text == "upper") return ScenarioKind::Upper;
  throw InputError("unknown scenario kind '" + text + "'");
}

lp::Relation parse_relation(const std::string& text) {
  if (text == "eq") return lp::Relation::Eq;
  if (text == "le") return lp::Relation::Le;
  if (text == "ge") return lp::Relation::Ge;
  throw InputError("unknown relation '" + text + "' (expected eq, le or ge)");
}

Scenario::Scenario(EventSpace space, std::vector<MomentConstraint> constraints, ScenarioKind kind)
    : space_(std::move(space)), constraints_(std::move(constraints)), kind_(kind) {
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    auto vars = space_.resolve_subset(constraints_[i].subset);
    std::sort(vars.begin(), vars.end());
    if (!seen.insert(vars).second) {
      throw InputError("constraint " + std::to_string(i) + ": duplicate moment " +
                       moment_label(constraints_[i].subset));
    }
  }
}

bool Scenario::exact() const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [](const MomentConstraint& c) { return c.target.is_exact(); });
}

lp::LinearProgram Scenario::feasibility_program(Endpoint endpoint) const {
  lp::LinearProgram program;
  program.variable_count = space_.atom_count();
  program.add_row(std::vector<Rational>(space_.atom_count(), Rational(1)), lp::Relation::Eq, 1);
  for (const auto& c : constraints_) {
    auto coeffs = space_.moment_coefficients(c.subset);
    program.add_row(std::vector<Rational>(coeffs.begin(), coeffs.end()), c.relation, c.target_at(endpoint));
  }
  return program;
}

std::vector<std::string> Scenario::row_labels() const {
  std::vector<std::string> out{"sum"};
  for (const auto& c : constraints_) out.push_back("E(" + moment_label(c.subset) + ")");
  return out;
}

namespace {

bool relation_holds(lp::Relation rel, const Rational& lhs, const Rational& rhs) {
  switch (rel) {
    case lp::Relation::Eq:
      return lhs == rhs;
    case lp::Relation::Le:
      return lhs <= rhs;
    case lp::Relation::Ge:
      return lhs >= rhs;
  }
  return false;
}

void require_standard(const Scenario& scenario) {
  if (scenario.kind() != ScenarioKind::Standard) {
    throw InputError("the LP engine handles standard scenarios; " + to_string(scenario.kind()) +
                     " scenarios use the nonadditive solvers");
  }
}

}  // namespace

FeasibilityOutcome solve(const Scenario& scenario, Endpoint endpoint, SolveOptions options) {
  require_standard(scenario);
  FeasibilityOutcome outcome;
  outcome.endpoint = endpoint;
  lp::LinearProgram program = scenario.feasibility_program(endpoint);
  lp::Result result = lp::solve(program);
  if (result.status == lp::Status::Infeasible) {
    outcome.verdict = Verdict::Infeasible;
    outcome.certificate = result.farkas;
    outcome.certificate_verified = verify_certificate(scenario, endpoint, outcome.certificate);
    if (!outcome.certificate_verified) throw InternalError("Farkas certificate failed verification");
    if (options.compute_margin) outcome.margin = margin(scenario, endpoint);
    return outcome;
  }
  if (result.status != lp::Status::Optimal) throw InternalError("feasibility LP reported unbounded");

  AtomMeasure witness(scenario.space(), result.x, AtomKind::Standard);
  if (!validate(witness).passed()) throw InternalError("witness fails measure validation");
  bool all_ok = true;
  for (const auto& c : scenario.constraints()) {
    Rational achieved = expectation(witness, c.subset);
    bool ok = relation_holds(c.relation, achieved, c.target_at(endpoint));
    all_ok = all_ok && ok;
    outcome.trace.push_back({"E(" + moment_label(c.subset) + ")", c.relation, c.target_at(endpoint), achieved, ok});
  }
  if (!all_ok) throw InternalError("witness does not reproduce the constraints");
  outcome.verdict = Verdict::Feasible;
  outcome.witness = std::move(witness);
  return outcome;
}

RobustOutcome solve_robust(const Scenario& scenario, SolveOptions options) {
  FeasibilityOutcome lo = solve(scenario, Endpoint::Lo, options);
  FeasibilityOutcome hi = scenario.exact() ? lo : solve(scenario, Endpoint::Hi, options);
  if (scenario.exact()) hi.endpoint = Endpoint::Hi;
  Verdict verdict = lo.verdict == hi.verdict ? lo.verdict : Verdict::Indeterminate;
  return {verdict, std::move(lo), std::move(hi)};
}

Rational margin(const Scenario& scenario, Endpoint endpoint) {
  require_standard(scenario);
  const std::size_t atoms = scenario.space().atom_count();
  lp::LinearProgram program;
  program.variable_count = atoms + 1;  // last variable is t
  std::vector<Rational> norm(atoms + 1, Rational(1));
  norm[atoms] = 0;
  program.add_row(norm, lp::Relation::Eq, 1);
  for (const auto& c : scenario.constraints()) {
    auto coeffs = scenario.space().moment_coefficients(c.subset);
    std::vector<Rational> row(coeffs.begin(), coeffs.end());
    row.push_back(0);
    const Rational& b = c.target_at(endpoint);
    if (c.relation != lp::Relation::Ge) {  // moment - t <= b
      row[atoms] = -1;
      program.add_row(row, lp::Relation::Le, b);
    }
    if (c.relation != lp::Relation::Le) {  // moment + t >= b
      row[atoms] = 1;
      program.add_row(row, lp::Relation::Ge, b);
    }
  }
  program.objective.assign(atoms + 1, 0);
  program.objective[atoms] = 1;
  lp::Result result = lp::solve(program);
  if (result.status != lp::Status::Optimal) throw InternalError("margin LP did not reach an optimum");
  return result.objective;
}

bool verify_certificate(const Scenario& scenario, Endpoint endpoint, const std::vector<Rational>& certificate) {
  const auto& constraints = scenario.constraints();
  if (certificate.size() != constraints.size() + 1) {
    throw InputError("certificate has " + std::to_string(certificate.size()) + " entries, expected " +
                     std::to_string(constraints.size() + 1));
  }
  // Rebuilt from the moment definitions rather than from the LP rows.
  const EventSpace& space = scenario.space();
  std::vector<Rational> combo(space.atom_count(), certificate[0]);
  Rational rhs = certificate[0];
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Rational& y = certificate[i + 1];
    const auto& c = constraints[i];
    if (c.relation == lp::Relation::Ge && y < 0) return false;
    if (c.relation == lp::Relation::Le && y > 0) return false;
    if (y == 0) continue;
    auto vars = space.resolve_subset(c.subset);
    for (std::size_t a = 0; a < space.atom_count(); ++a) {
      int s = 1;
      for (std::size_t v : vars) s *= space.sign(a, v);
      combo[a] += s * y;
    }
    rhs += y * c.target_at(endpoint);
  }
  for (const auto& coeff : combo) {
    if (coeff > 0) return false;
  }
  return rhs > 0;
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("CONTEXTUALITY_KIT_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

GridReport oracle_grid_agreement(std::size_t points_per_axis, std::size_t threads) {
  if (points_per_axis < 2) throw InputError("grid needs at least 2 points per axis");
  if (threads == 0) threads = default_worker_count();
  const std::size_t total = points_per_axis * points_per_axis;
  const Rational step(1, static_cast<long>(points_per_axis - 1));

  // Slot per grid point so the result order is independent of scheduling.
  std::vector<std::optional<GridMismatch>> slots(total);
  std::vector<std::exception_ptr> failures(threads);
  auto sweep = [&](std::size_t worker) {
    for (std::size_t k = worker; k < total; k += threads) {
      SymmetricParams params{step * static_cast<long>(k / points_per_axis),
                             step * static_cast<long>(k % points_per_axis)};
      Scenario scenario = symmetric_scenario(params);
      Verdict lp_verdict = solve(scenario, Endpoint::Lo, {.compute_margin = false}).verdict;
      GhzMoments m{2 * params.p - 1, 2 * params.p - 1, 2 * params.p - 1, 2 * params.q - 1};
      bool closed = ghz_inequalities(m).passed;
      if ((lp_verdict == Verdict::Feasible) != closed) {
        slots[k] = GridMismatch{params.p, params.q, lp_verdict, closed};
      }
    }
  };
  auto work = [&](std::size_t worker) {
    try {
      sweep(worker);
    } catch (...) {
      failures[worker] = std::current_exception();
    }
  };
  threads = std::min(threads, total);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  GridReport report;
  report.points = total;
  for (auto& slot : slots) {
    if (slot) report.mismatches.push_back(std::move(*slot));
  }
  return report;
}

}  // namespace ctxkit
