#include "ctxkit/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "ctxkit/value_expr.hpp"

namespace ctxkit::io {

namespace {

const Json& require(const Json& doc, const char* key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ScenarioError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string require_string(const Json& value, const std::string& where) {
  if (!value.is_string()) throw ScenarioError(where + ": expected a string");
  return value.get<std::string>();
}

std::vector<std::string> string_list(const Json& value, const std::string& where) {
  if (!value.is_array()) throw ScenarioError(where + ": expected an array of names");
  std::vector<std::string> out;
  for (const auto& item : value) out.push_back(require_string(item, where));
  return out;
}

Json variables_json(const EventSpace& space) { return Json(space.variables()); }

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ScenarioError("'" + path + "' is not valid JSON: " + e.what());
  }
}

const Json& scenario_section(const Json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario document must be a JSON object");
  auto input = doc.find("input");
  if (input != doc.end() && input->is_object()) {
    auto sc = input->find("scenario");
    if (sc != input->end()) return *sc;
  }
  return doc;
}

Scenario scenario_from_json(const Json& full, const Rational& bracket_tolerance) {
  const Json& doc = scenario_section(full);
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
  ScenarioKind kind = ScenarioKind::Standard;
  if (auto it = doc.find("kind"); it != doc.end()) kind = parse_scenario_kind(require_string(*it, "kind"));

  EventSpace space(string_list(require(doc, "variables", "scenario"), "variables"));

  const Json& list = require(doc, "constraints", "scenario");
  if (!list.is_array()) throw ScenarioError("constraints: expected an array");
  std::vector<MomentConstraint> constraints;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "constraint " + std::to_string(i);
    const Json& item = list[i];
    if (!item.is_object()) throw ScenarioError(where + ": expected an object");
    MomentConstraint c;
    c.subset = string_list(require(item, "moment", where), where + " moment");
    if (auto it = item.find("relation"); it != item.end()) c.relation = parse_relation(require_string(*it, where));
    const Json& value = require(item, "value", where);
    if (value.is_number_integer()) {
      c.expression = std::to_string(value.get<long long>());
    } else {
      c.expression = require_string(value, where + " value");
    }
    try {
      c.target = evaluate_text(c.expression, bracket_tolerance);
    } catch (const InputError& e) {
      throw ScenarioError(where + ": " + e.what());
    }
    constraints.push_back(std::move(c));
  }
  Scenario scenario(std::move(space), std::move(constraints), kind);
  if (auto it = doc.find("title"); it != doc.end()) scenario.title = require_string(*it, "title");
  if (auto it = doc.find("notes"); it != doc.end()) scenario.notes = require_string(*it, "notes");
  return scenario;
}

Scenario load_scenario(const std::string& path, const Rational& bracket_tolerance) {
  return scenario_from_json(read_json_file(path), bracket_tolerance);
}

Json to_json(const Scenario& scenario) {
  Json out = Json::object();
  if (!scenario.title.empty()) out["title"] = scenario.title;
  if (!scenario.notes.empty()) out["notes"] = scenario.notes;
  out["kind"] = to_string(scenario.kind());
  out["variables"] = variables_json(scenario.space());
  Json list = Json::array();
  for (const auto& c : scenario.constraints()) {
    list.push_back(Json{{"moment", c.subset}, {"relation", lp::to_string(c.relation)}, {"value", c.expression}});
  }
  out["constraints"] = std::move(list);
  return out;
}

Json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (!value.is_string()) throw ScenarioError("expected a rational written as a string");
  return parse_rational(value.get<std::string>());
}

Json to_json(const ScalarInterval& value) {
  return Json{{"lo", to_string(value.lo())}, {"hi", to_string(value.hi())}};
}

Json to_json(const EventMask& event, const EventSpace& space) {
  Json out = Json::array();
  for (std::size_t atom : event.indices()) out.push_back(space.signature(atom));
  return out;
}

Json to_json(const AtomMeasure& measure) {
  Json atoms = Json::object();
  for (std::size_t a = 0; a < measure.values.size(); ++a) {
    atoms[measure.space.signature(a)] = to_string(measure.values[a]);
  }
  return Json{{"kind", to_string(measure.kind)},
              {"variables", variables_json(measure.space)},
              {"atoms", std::move(atoms)},
              {"total", to_string(measure.total())}};
}

Json to_json(const PartialSetFunction& sf) {
  Json events = Json::array();
  for (const auto& [event, value] : sf.entries) {
    events.push_back(Json{{"atoms", to_json(event, sf.space)}, {"value", to_string(value)}});
  }
  return Json{{"kind", to_string(sf.kind)}, {"variables", variables_json(sf.space)}, {"events", std::move(events)}};
}

Json to_json(const ValidationReport& report, const EventSpace& space) {
  Json list = Json::array();
  for (const auto& v : report.violations) {
    Json events = Json::array();
    for (const auto& e : v.events) events.push_back(to_json(e, space));
    list.push_back(Json{{"axiom", v.axiom}, {"detail", v.detail}, {"events", std::move(events)}});
  }
  return Json{{"passed", report.passed()}, {"violations", std::move(list)}};
}

Json to_json(const std::vector<Check>& checks) {
  Json list = Json::array();
  for (const auto& c : checks) list.push_back(Json{{"check", c.name}, {"detail", c.detail}, {"holds", c.holds}});
  return list;
}

Json to_json(const FeasibilityOutcome& outcome, const Scenario& scenario) {
  Json out = Json::object();
  out["verdict"] = to_string(outcome.verdict);
  out["endpoint"] = to_string(outcome.endpoint);
  if (outcome.witness) out["witness"] = to_json(*outcome.witness);
  if (!outcome.certificate.empty()) {
    Json cert = Json::array();
    for (const auto& y : outcome.certificate) cert.push_back(to_string(y));
    out["certificate"] = std::move(cert);
    out["certificate_rows"] = scenario.row_labels();
    out["certificate_verified"] = outcome.certificate_verified;
  }
  out["margin"] = to_string(outcome.margin);
  out["margin_decimal"] = to_double(outcome.margin);
  Json trace = Json::array();
  for (const auto& t : outcome.trace) {
    trace.push_back(Json{{"moment", t.moment},
                         {"relation", lp::to_string(t.relation)},
                         {"target", to_string(t.target)},
                         {"achieved", to_string(t.achieved)},
                         {"satisfied", t.satisfied}});
  }
  out["trace"] = std::move(trace);
  return out;
}

AtomMeasure atom_measure_from_json(const Json& doc) {
  if (!doc.is_object()) throw ScenarioError("measure must be a JSON object");
  EventSpace space(string_list(require(doc, "variables", "measure"), "variables"));
  AtomKind kind = AtomKind::Standard;
  if (auto it = doc.find("kind"); it != doc.end()) kind = parse_atom_kind(require_string(*it, "measure kind"));
  const Json& atoms = require(doc, "atoms", "measure");
  if (!atoms.is_object()) throw ScenarioError("measure atoms: expected an object keyed by sign strings");
  std::vector<Rational> values(space.atom_count(), Rational(0));
  std::vector<bool> seen(space.atom_count(), false);
  for (const auto& [sig, value] : atoms.items()) {
    std::size_t a = space.atom_index(sig);
    if (seen[a]) throw ScenarioError("atom " + sig + " listed twice");
    seen[a] = true;
    values[a] = rational_from_json(value);
  }
  return AtomMeasure(std::move(space), std::move(values), kind);
}

PartialSetFunction set_function_from_json(const Json& doc) {
  if (!doc.is_object()) throw ScenarioError("set function must be a JSON object");
  EventSpace space(string_list(require(doc, "variables", "set function"), "variables"));
  PartialSetFunction sf(space, parse_set_function_kind(require_string(require(doc, "kind", "set function"), "kind")));
  const Json& events = require(doc, "events", "set function");
  if (!events.is_array()) throw ScenarioError("set function events: expected an array");
  for (const auto& e : events) {
    EventMask mask = space.empty_event();
    for (const auto& sig : require(e, "atoms", "event")) mask.insert(space.atom_index(require_string(sig, "event atom")));
    if (sf.get(mask)) throw ScenarioError("event listed twice in set function");
    sf.set(mask, rational_from_json(require(e, "value", "event")));
  }
  return sf;
}

}  // namespace ctxkit::io
