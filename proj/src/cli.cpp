#include "ctxkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ctxkit/closed_form.hpp"
#include "ctxkit/errors.hpp"
#include "ctxkit/feasibility.hpp"
#include "ctxkit/quantum.hpp"
#include "ctxkit/scenario_io.hpp"
#include "ctxkit/value_expr.hpp"

namespace ctxkit::cli {

namespace {

using io::Json;

constexpr const char* kDefaultTolerance = "1/1000000000000";

struct Options {
  std::string format = "text";
  std::string tolerance_text = kDefaultTolerance;
  std::string scenario_path;
  std::string witness_path;
  bool oracle = false;
  std::size_t grid = 0;
  std::string p = "1/2";
  std::string q = "1/2";
  std::string epsilon = "0";
  std::string xy = "-sqrt(3)/2";
  std::string xz = "-sqrt(3)/2";
  std::string yz = "-1/2";
  std::vector<double> angles;
};

// A verdict paired with its exit code, so the mapping lives in one place.
struct Outcome {
  Json report;
  int code;
};

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Feasible:
      return kExitFeasible;
    case Verdict::Infeasible:
      return kExitInfeasible;
    case Verdict::Indeterminate:
      return kExitIndeterminate;
  }
  return kExitInternal;
}

Rational parse_tolerance(const std::string& text) {
  Rational t = evaluate_exact(text);
  if (t <= 0) throw InputError("bracket tolerance must be positive");
  return t;
}

Rational exact_flag(const std::string& name, const std::string& text) {
  try {
    return evaluate_exact(text);
  } catch (const InputError& e) {
    throw InputError("--" + name + ": " + e.what());
  }
}

Json header(const std::string& command) {
  Json r = Json::object();
  r["tool"] = "ctxkit";
  r["version"] = kVersion;
  r["command"] = command;
  return r;
}

// ---------------------------------------------------------------------------
// Text rendering: a plain walk over the JSON report.

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(12) << v.get<double>();
    return s.str();
  }
  return v.dump();
}

bool is_flat(const Json& v) {
  if (!v.is_array()) return !v.is_object();
  return std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_object() && !e.is_array(); });
}

void render(const Json& v, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      if (is_flat(value)) {
        out << pad << key << ": ";
        if (value.is_array() && value.empty()) {
          out << "(none)";
        } else if (value.is_array()) {
          for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : "") << scalar_text(value[i]);
        } else {
          out << scalar_text(value);
        }
        out << '\n';
      } else {
        out << pad << key << ":\n";
        render(value, out, indent + 1);
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (is_flat(item)) {
        out << pad << "- " << scalar_text(item) << '\n';
      } else {
        out << pad << "-\n";
        render(item, out, indent + 1);
      }
    }
  } else {
    out << pad << scalar_text(v) << '\n';
  }
}

void emit(const Json& report, const Options& opt, std::ostream& out) {
  if (opt.format == "json") {
    out << report.dump(2) << '\n';
  } else {
    render(report, out, 0);
  }
}

// ---------------------------------------------------------------------------

std::optional<GhzMoments> ghz_shape(const Scenario& s) {
  const auto& vars = s.space().variables();
  if (vars.size() != 3 || s.constraints().size() != 4) return std::nullopt;
  std::optional<Rational> single[3];
  std::optional<Rational> triple;
  for (const auto& c : s.constraints()) {
    if (c.relation != lp::Relation::Eq || !c.target.is_exact()) return std::nullopt;
    if (c.subset.size() == 3) {
      triple = c.target.lo();
    } else if (c.subset.size() == 1) {
      single[s.space().variable_index(c.subset[0])] = c.target.lo();
    } else {
      return std::nullopt;
    }
  }
  if (!triple || !single[0] || !single[1] || !single[2]) return std::nullopt;
  return GhzMoments{*single[0], *single[1], *single[2], *triple};
}

Json inequalities_json(const GhzMoments& m) {
  GhzInequalityResult t = ghz_inequalities(m);
  Json sums = Json::array();
  for (const auto& s : t.sums) sums.push_back(to_string(s));
  Json out{{"F", to_string(ghz_F(m))}, {"inequalities_hold", t.passed}, {"signed_sums", std::move(sums)}};
  if (!t.passed) out["violated_inequality"] = t.violated;
  return out;
}

Json grid_json(std::size_t n) {
  GridReport g = oracle_grid_agreement(n, default_worker_count());
  Json mism = Json::array();
  for (const auto& m : g.mismatches) {
    mism.push_back(Json{{"p", to_string(m.p)},
                        {"q", to_string(m.q)},
                        {"lp", to_string(m.lp)},
                        {"closed_form_feasible", m.closed_form_feasible}});
  }
  return Json{{"points_per_axis", n}, {"points", g.points}, {"mismatches", std::move(mism)}};
}

Json endpoint_json(const FeasibilityOutcome& o, const Scenario& s) { return io::to_json(o, s); }

Json margin_json(const Rational& lo, const Rational& hi) {
  return Json{{"lo", to_string(lo)}, {"hi", to_string(hi)}, {"lo_decimal", to_double(lo)}, {"hi_decimal", to_double(hi)}};
}

Json scenario_input(const Scenario& s, const std::string& tolerance) {
  return Json{{"scenario", io::to_json(s)}, {"bracket_tolerance", tolerance}};
}

Outcome nonadditive_report(Json r, const Scenario& scenario) {
  try {
    NonadditiveWitness w = solve_nonadditive(scenario);
    r["verdict"] = to_string(Verdict::Feasible);
    r["witness"] = io::to_json(w.atoms);
    r["set_function"] = io::to_json(w.set_function);
    r["forced_zero_atoms"] = w.forced_zero_atoms;
    r["validation"] = io::to_json(validate(w.set_function), w.set_function.space);
    r["trace"] = io::to_json(w.checks);
    return {std::move(r), kExitFeasible};
  } catch (const NoWitnessError& e) {
    r["verdict"] = to_string(Verdict::Infeasible);
    r["detail"] = e.what();
    return {std::move(r), kExitInfeasible};
  }
}

Outcome robust_report(Json r, const Scenario& scenario, bool oracle, std::size_t grid) {
  RobustOutcome robust = solve_robust(scenario);
  r["verdict"] = to_string(robust.verdict);
  r["margin"] = margin_json(robust.lo.margin, robust.hi.margin);
  r["endpoints"] = Json{{"lo", endpoint_json(robust.lo, scenario)}, {"hi", endpoint_json(robust.hi, scenario)}};
  int code = exit_code(robust.verdict);
  auto ghz = ghz_shape(scenario);
  if (ghz) r["closed_form"] = inequalities_json(*ghz);
  if (oracle || grid > 0) {
    Json section = Json::object();
    bool agree = true;
    if (ghz) {
      bool closed = ghz_inequalities(*ghz).passed;
      bool lp_feasible = robust.verdict == Verdict::Feasible;
      section["lp_vs_closed_form"] = Json{{"lp_feasible", lp_feasible}, {"closed_form_feasible", closed}};
      agree = agree && closed == lp_feasible;
    }
    if (grid > 0) {
      section["grid"] = grid_json(grid);
      agree = agree && section["grid"]["mismatches"].empty();
    }
    section["agree"] = agree;
    r["oracle"] = std::move(section);
    if (!agree) code = kExitInternal;
  }
  return {std::move(r), code};
}

Scenario scenario_flag(const Options& opt, std::string& tolerance_used, bool tolerance_given) {
  if (opt.scenario_path.empty()) throw InputError("--scenario is required");
  Json doc = io::read_json_file(opt.scenario_path);
  // A report fed back in re-uses its recorded tolerance unless one is given.
  tolerance_used = opt.tolerance_text;
  if (!tolerance_given && doc.is_object()) {
    auto in = doc.find("input");
    if (in != doc.end() && in->is_object() && in->contains("bracket_tolerance")) {
      tolerance_used = (*in)["bracket_tolerance"].get<std::string>();
    }
  }
  return io::scenario_from_json(doc, parse_tolerance(tolerance_used));
}

Outcome cmd_check(const Options& opt, bool tolerance_given) {
  std::string tol;
  Scenario scenario = scenario_flag(opt, tol, tolerance_given);
  Json r = header("check");
  r["input"] = scenario_input(scenario, tol);
  if (scenario.kind() != ScenarioKind::Standard) return nonadditive_report(std::move(r), scenario);
  return robust_report(std::move(r), scenario, opt.oracle, opt.grid);
}

Outcome cmd_margin(const Options& opt, bool tolerance_given) {
  std::string tol;
  Scenario scenario = scenario_flag(opt, tol, tolerance_given);
  Json r = header("margin");
  r["input"] = scenario_input(scenario, tol);
  Rational lo = margin(scenario, Endpoint::Lo);
  Rational hi = margin(scenario, Endpoint::Hi);
  r["margin"] = margin_json(lo, hi);
  Verdict v = lo == 0 && hi == 0 ? Verdict::Feasible
              : lo > 0 && hi > 0 ? Verdict::Infeasible
                                 : Verdict::Indeterminate;
  r["verdict"] = to_string(v);
  return {std::move(r), exit_code(v)};
}

Outcome cmd_symmetric(const Options& opt) {
  SymmetricParams params{exact_flag("p", opt.p), exact_flag("q", opt.q)};
  Json r = header("construct-symmetric");
  r["input"] = Json{{"p", to_string(params.p)}, {"q", to_string(params.q)}};
  r["condition"] = "0 <= 3p - q <= 2";
  r["3p-q"] = to_string(3 * params.p - params.q);
  int code = kExitFeasible;
  bool constructed = false;
  try {
    SymmetricConstruction c = symmetric_construct(params);
    constructed = true;
    r["verdict"] = to_string(Verdict::Feasible);
    r["weights"] = Json{{"x", to_string(c.weights.x)},
                        {"y", to_string(c.weights.y)},
                        {"z", to_string(c.weights.z)},
                        {"w", to_string(c.weights.w)}};
    r["witness"] = io::to_json(c.measure);
    Json trace = Json::array();
    for (const auto& name : c.measure.space.variables()) {
      trace.push_back(Json{{"moment", name},
                           {"target", to_string(2 * params.p - 1)},
                           {"achieved", to_string(expectation(c.measure, {name}))}});
    }
    trace.push_back(Json{{"moment", "A*B*C"},
                         {"target", to_string(2 * params.q - 1)},
                         {"achieved", to_string(expectation(c.measure, {"A", "B", "C"}))}});
    r["trace"] = std::move(trace);
  } catch (const NoWitnessError& e) {
    r["verdict"] = to_string(Verdict::Infeasible);
    r["detail"] = e.what();
    code = kExitInfeasible;
  }
  if (opt.oracle || opt.grid > 0) {
    Json section = Json::object();
    bool agree = true;
    if (params.p >= 0 && params.p <= 1 && params.q >= 0 && params.q <= 1) {
      FeasibilityOutcome lp = solve(symmetric_scenario(params), Endpoint::Lo, {.compute_margin = false});
      section["lp_verdict"] = to_string(lp.verdict);
      agree = (lp.verdict == Verdict::Feasible) == constructed;
    }
    if (opt.grid > 0) {
      section["grid"] = grid_json(opt.grid);
      agree = agree && section["grid"]["mismatches"].empty();
    }
    section["agree"] = agree;
    r["oracle"] = std::move(section);
    if (!agree) code = kExitInternal;
  }
  return {std::move(r), code};
}

Outcome cmd_epsilon(const Options& opt) {
  Rational eps = exact_flag("epsilon", opt.epsilon);
  EpsilonResult closed = epsilon_feasible(eps);
  Scenario scenario = epsilon_scenario(eps);
  Json r = header("ghz-epsilon");
  r["input"] = Json{{"epsilon", to_string(eps)}, {"scenario", io::to_json(scenario)}};
  r["closed_form"] = Json{{"F", to_string(closed.F)}, {"bound", "F <= 2"}, {"feasible", closed.feasible}};
  FeasibilityOutcome lp = solve(scenario, Endpoint::Lo);
  r["verdict"] = to_string(lp.verdict);
  r["lp"] = io::to_json(lp, scenario);
  int code = exit_code(lp.verdict);
  bool agree = closed.feasible == (lp.verdict == Verdict::Feasible);
  r["agree"] = agree;
  if (!agree) code = kExitInternal;
  return {std::move(r), code};
}

Outcome cmd_mermin() {
  MerminResult m = mermin_assignment_check();
  Json r = header("mermin");
  r["assignments"] = m.assignments;
  r["satisfying"] = m.satisfying;
  r["identity_holds"] = m.identity_holds;
  r["summary"] = std::to_string(m.satisfying) + " of " + std::to_string(m.assignments) +
                 " assignments satisfy (i) and (ii)";
  r["identity"] = "A*B*C = D holds for " + std::to_string(m.identity_holds) + " of " +
                  std::to_string(m.assignments);
  Verdict v = m.satisfying == 0 ? Verdict::Infeasible : Verdict::Feasible;
  r["verdict"] = to_string(v);
  return {std::move(r), exit_code(v)};
}

BellMoments bell_flags(const Options& opt, const Rational& tol, Json& input) {
  input = Json{{"xy", opt.xy}, {"xz", opt.xz}, {"yz", opt.yz}, {"bracket_tolerance", opt.tolerance_text}};
  return BellMoments{evaluate_text(opt.xy, tol), evaluate_text(opt.xz, tol), evaluate_text(opt.yz, tol)};
}

Json six_json(const SixConditionals& values) {
  Json out = Json::object();
  const auto& names = conditional_names();
  for (std::size_t k = 0; k < values.size(); ++k) out[names[k]] = to_string(values[k]);
  return out;
}

Outcome cmd_bell_system(const Options& opt) {
  Rational tol = parse_tolerance(opt.tolerance_text);
  Json r = header("bell-system");
  Json input;
  BellMoments m = bell_flags(opt, tol, input);
  r["input"] = std::move(input);
  Scenario scenario = bell_scenario(m);
  Json ends = Json::object();
  bool solved[2];
  for (Endpoint e : {Endpoint::Lo, Endpoint::Hi}) {
    BellSystemResult res = bell_conditional_solve(m, e);
    Json j{{"linear_stage", Json{{"solved", res.linear_stage_solved}, {"detail", res.linear_detail}}}};
    if (res.conditionals) j["conditionals"] = six_json(*res.conditionals);
    j["realizability"] = io::to_json(res.realizability, scenario);
    j["solved"] = res.solved();
    solved[e == Endpoint::Lo ? 0 : 1] = res.solved();
    ends[to_string(e)] = std::move(j);
  }
  Verdict v = solved[0] && solved[1]     ? Verdict::Feasible
              : !solved[0] && !solved[1] ? Verdict::Infeasible
                                         : Verdict::Indeterminate;
  r["verdict"] = to_string(v);
  r["margin"] = margin_json(margin(scenario, Endpoint::Lo), margin(scenario, Endpoint::Hi));
  r["endpoints"] = std::move(ends);
  return {std::move(r), exit_code(v)};
}

Outcome cmd_upper_bell(const Options& opt) {
  Rational tol = parse_tolerance(opt.tolerance_text);
  Json r = header("upper-bell");
  Json input;
  BellMoments m = bell_flags(opt, tol, input);
  r["input"] = std::move(input);
  Json ends = Json::object();
  bool ok = true;
  for (Endpoint e : {Endpoint::Lo, Endpoint::Hi}) {
    UpperBellResult res = upper_bell_solve(m, e);
    ok = ok && res.verified();
    ends[to_string(e)] = Json{{"conditionals", six_json(res.values)}, {"trace", io::to_json(res.checks)}};
  }
  r["verdict"] = to_string(ok ? Verdict::Feasible : Verdict::Infeasible);
  r["endpoints"] = std::move(ends);
  return {std::move(r), ok ? kExitFeasible : kExitInfeasible};
}

Json conjugacy_json(const ConjugacyReport& rep, const EventSpace& space) {
  Json list = Json::array();
  for (const auto& v : rep.violations) {
    list.push_back(Json{{"event", io::to_json(v.event, space)},
                        {"basis", v.basis == ConjugacyViolation::Basis::Direct ? "direct" : "forced"},
                        {"upper_range", Json{to_string(v.upper_lo), to_string(v.upper_hi)}},
                        {"lower_complement_range",
                         Json{to_string(v.lower_complement_lo), to_string(v.lower_complement_hi)}}});
  }
  Json skipped = Json::array();
  for (const auto& e : rep.unextendable) skipped.push_back(io::to_json(e, space));
  return Json{{"relation", "P*(E) = 1 - P_*(not E)"},
              {"events_with_both_sides", rep.direct_checks},
              {"violations", std::move(list)},
              {"no_admissible_value", std::move(skipped)}};
}

Outcome cmd_ghz_witness(const std::string& command, ScenarioKind kind) {
  Json r = header(command);
  Scenario premises = ghz_premises(kind);
  r["input"] = Json{{"scenario", io::to_json(premises)}};
  NonadditiveWitness w = kind == ScenarioKind::Lower ? lower_ghz_solve() : upper_ghz_solve();
  ValidationReport valid = validate(w.set_function);
  r["verdict"] = to_string(valid.passed() && all_hold(w.checks) ? Verdict::Feasible : Verdict::Infeasible);
  r["witness"] = io::to_json(w.atoms);
  r["set_function"] = io::to_json(w.set_function);
  r["forced_zero_atoms"] = w.forced_zero_atoms;
  r["validation"] = io::to_json(valid, w.set_function.space);
  r["trace"] = io::to_json(w.checks);
  if (kind == ScenarioKind::Upper) {
    NonadditiveWitness lower = lower_ghz_solve();
    r["conjugacy"] = conjugacy_json(check_conjugacy(w.set_function, lower.set_function), w.set_function.space);
  }
  return {std::move(r), valid.passed() && all_hold(w.checks) ? kExitFeasible : kExitInfeasible};
}

Json quantum_value(double v) {
  Json out{{"value", v}};
  if (auto exact = quantum::nearest_exact_form(v)) out["exact"] = *exact;
  return out;
}

Outcome cmd_quantum(const Options& opt) {
  using namespace quantum;
  Json r = header("quantum");
  GhzOperators ops = ghz_operators();
  double identity_gap = max_abs_difference(ops.a.matrix() * ops.b.matrix() * ops.c.matrix(), -ops.d.matrix());
  bool ok = identity_gap <= kTolerance;
  r["operators"] = Json{{"A", ops.a.label()}, {"B", ops.b.label()}, {"C", ops.c.label()}, {"D", ops.d.label()}};
  r["operator_identity"] = Json{{"relation", "A*B*C = -D"}, {"max_entry_gap", identity_gap}, {"holds", ok}};

  Json states = Json::array();
  auto add_state = [&](const std::string& name, const StateVector& psi) {
    double ea = expectation_value(psi, ops.a);
    double eb = expectation_value(psi, ops.b);
    double ec = expectation_value(psi, ops.c);
    double ed = expectation_value(psi, ops.d);
    bool product = std::abs(ea * eb * ec + ed) <= kTolerance;
    ok = ok && product;
    states.push_back(Json{{"state", name},
                          {"E(A)", quantum_value(ea)},
                          {"E(B)", quantum_value(eb)},
                          {"E(C)", quantum_value(ec)},
                          {"E(D)", quantum_value(ed)},
                          {"E(A)E(B)E(C) = -E(D)", product}});
  };
  add_state("(|+++> - |--->)/sqrt(2)", mermin_ghz_state());
  add_state("(|++-> + |--+>)/sqrt(2)", alt_ghz_state());
  r["ghz_states"] = std::move(states);

  std::vector<double> angles = opt.angles.empty() ? std::vector<double>{30.0, 60.0} : opt.angles;
  Json singlet = Json::array();
  for (double deg : angles) {
    Json v = quantum_value(singlet_correlation(degrees_to_radians(deg)));
    v["angle_degrees"] = deg;
    singlet.push_back(std::move(v));
  }
  r["singlet_correlations"] = std::move(singlet);
  r["verdict"] = ok ? "pass" : "fail";
  return {std::move(r), ok ? kExitFeasible : kExitInfeasible};
}

// Checks a standard witness against the scenario echoed next to it.
Json witness_constraint_check(const AtomMeasure& m, const Scenario& s, Endpoint e, bool& ok) {
  Json trace = Json::array();
  for (const auto& c : s.constraints()) {
    Rational achieved = expectation(m, c.subset);
    const Rational& target = c.target_at(e);
    bool holds = c.relation == lp::Relation::Eq   ? achieved == target
                 : c.relation == lp::Relation::Le ? achieved <= target
                                                  : achieved >= target;
    ok = ok && holds;
    trace.push_back(Json{{"moment", moment_label(c.subset)},
                         {"relation", lp::to_string(c.relation)},
                         {"target", to_string(target)},
                         {"achieved", to_string(achieved)},
                         {"satisfied", holds}});
  }
  return trace;
}

Outcome cmd_validate(const Options& opt) {
  if (opt.witness_path.empty()) throw InputError("--witness is required");
  Json doc = io::read_json_file(opt.witness_path);
  if (!doc.is_object()) throw io::ScenarioError("witness file must be a JSON object");
  Json r = header("validate");
  r["input"] = Json{{"witness_file", opt.witness_path}};
  bool ok = true;
  Json results = Json::array();

  std::optional<Scenario> scenario;
  if (auto in = doc.find("input"); in != doc.end() && in->is_object() && in->contains("scenario")) {
    std::string tol = in->value("bracket_tolerance", std::string(kDefaultTolerance));
    Scenario s = io::scenario_from_json((*in)["scenario"], parse_tolerance(tol));
    if (s.kind() == ScenarioKind::Standard) scenario = std::move(s);
  }

  auto check_measure = [&](const std::string& where, const Json& j, std::optional<Endpoint> e) {
    AtomMeasure m = io::atom_measure_from_json(j);
    ValidationReport rep = validate(m);
    ok = ok && rep.passed();
    Json entry{{"location", where}, {"type", "atoms"}, {"validation", io::to_json(rep, m.space)}};
    if (scenario && e && m.kind == AtomKind::Standard && rep.passed() && m.space == scenario->space()) {
      entry["constraints"] = witness_constraint_check(m, *scenario, *e, ok);
    }
    results.push_back(std::move(entry));
  };
  auto check_set_function = [&](const std::string& where, const Json& j) {
    PartialSetFunction sf = io::set_function_from_json(j);
    ValidationReport rep = validate(sf);
    ok = ok && rep.passed();
    results.push_back(Json{{"location", where}, {"type", "set function"}, {"validation", io::to_json(rep, sf.space)}});
  };

  if (doc.contains("atoms")) check_measure("document", doc, Endpoint::Lo);
  if (doc.contains("events")) check_set_function("document", doc);
  if (doc.contains("witness")) check_measure("witness", doc["witness"], Endpoint::Lo);
  if (doc.contains("set_function")) check_set_function("set_function", doc["set_function"]);
  if (auto ends = doc.find("endpoints"); ends != doc.end() && ends->is_object()) {
    for (const auto& [name, section] : ends->items()) {
      Endpoint e = name == "hi" ? Endpoint::Hi : Endpoint::Lo;
      if (section.contains("witness")) check_measure("endpoints." + name + ".witness", section["witness"], e);
      if (section.contains("realizability") && section["realizability"].contains("witness")) {
        check_measure("endpoints." + name + ".realizability.witness", section["realizability"]["witness"],
                      std::nullopt);
      }
    }
  }
  if (results.empty()) throw InputError("no witness, atom measure or set function found in the file");
  r["results"] = std::move(results);
  r["verdict"] = ok ? "pass" : "violation";
  return {std::move(r), ok ? kExitFeasible : kExitInfeasible};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Joint-distribution feasibility for expectation constraints on +/-1 variables", "ctxkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  auto* tol_opt = app.add_option("--bracket-tolerance", opt.tolerance_text,
                                 "Maximum bracket width for irrational targets (exact expression)");

  auto* check = app.add_subcommand("check", "Decide feasibility of a scenario file");
  auto* margin_cmd = app.add_subcommand("margin", "Smallest uniform relaxation making a scenario feasible");
  auto* sym = app.add_subcommand("construct-symmetric", "Symmetric witness for P(A=1)=P(B=1)=P(C=1)=p, P(ABC=1)=q");
  auto* eps = app.add_subcommand("ghz-epsilon", "GHZ correlations weakened by epsilon");
  auto* mermin = app.add_subcommand("mermin", "Enumerate classical value assignments for the GHZ operators");
  auto* bell = app.add_subcommand("bell-system", "Conditional-expectation system for three pairwise correlations");
  auto* upper_bell = app.add_subcommand("upper-bell", "Upper-expectation relaxation of the pairwise system");
  auto* lower_ghz = app.add_subcommand("lower-ghz", "Lower-probability atoms for the GHZ premises");
  auto* upper_ghz = app.add_subcommand("upper-ghz", "Upper-probability atoms for the GHZ premises");
  auto* quantum_cmd = app.add_subcommand("quantum", "GHZ operator expectations and singlet correlations");
  auto* validate_cmd = app.add_subcommand("validate", "Check a witness or report against the measure axioms");

  for (auto* sub : {check, margin_cmd}) sub->add_option("--scenario", opt.scenario_path, "Scenario or report JSON")->required();
  for (auto* sub : {check, sym}) {
    sub->add_flag("--oracle", opt.oracle, "Cross-check the LP verdict with the closed-form inequalities");
    sub->add_option("--grid", opt.grid, "Also sweep an N x N symmetric (p,q) grid")->check(CLI::Range(2, 2001));
  }
  sym->add_option("--p", opt.p, "P(A=1), exact expression")->capture_default_str();
  sym->add_option("--q", opt.q, "P(ABC=1), exact expression")->capture_default_str();
  eps->add_option("--epsilon", opt.epsilon, "Weakening in [0,1], exact expression")->capture_default_str();
  for (auto* sub : {bell, upper_bell}) {
    sub->add_option("--xy", opt.xy, "E(XY)")->capture_default_str();
    sub->add_option("--xz", opt.xz, "E(XZ)")->capture_default_str();
    sub->add_option("--yz", opt.yz, "E(YZ)")->capture_default_str();
  }
  quantum_cmd->add_option("--angle", opt.angles, "Analyzer angles in degrees (default 30 60)");
  validate_cmd->add_option("--witness", opt.witness_path, "Report, atom measure or set function JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitFeasible;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitFeasible;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const bool tolerance_given = tol_opt->count() > 0;
  try {
    parse_tolerance(opt.tolerance_text);
    Outcome result{Json(), kExitInternal};
    if (*check) {
      result = cmd_check(opt, tolerance_given);
    } else if (*margin_cmd) {
      result = cmd_margin(opt, tolerance_given);
    } else if (*sym) {
      result = cmd_symmetric(opt);
    } else if (*eps) {
      result = cmd_epsilon(opt);
    } else if (*mermin) {
      result = cmd_mermin();
    } else if (*bell) {
      result = cmd_bell_system(opt);
    } else if (*upper_bell) {
      result = cmd_upper_bell(opt);
    } else if (*lower_ghz) {
      result = cmd_ghz_witness("lower-ghz", ScenarioKind::Lower);
    } else if (*upper_ghz) {
      result = cmd_ghz_witness("upper-ghz", ScenarioKind::Upper);
    } else if (*quantum_cmd) {
      result = cmd_quantum(opt);
    } else if (*validate_cmd) {
      result = cmd_validate(opt);
    }
    emit(result.report, opt, out);
    return result.code;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace ctxkit::cli
