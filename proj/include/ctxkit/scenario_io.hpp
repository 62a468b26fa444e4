#pragma once

#include <string>

#include <json.hpp>

#include "ctxkit/closed_form.hpp"
#include "ctxkit/feasibility.hpp"
#include "ctxkit/measures.hpp"
#include "ctxkit/rational.hpp"

namespace ctxkit::io {

using Json = nlohmann::ordered_json;

// Error while reading a scenario: I/O, JSON syntax, expression or semantics.
class ScenarioError : public InputError {
 public:
  using InputError::InputError;
};

// Scenario JSON:
//   {"title": ..., "notes": ..., "kind": "standard"|"lower"|"upper",
//    "variables": ["A", ...],
//    "constraints": [{"moment": ["A","B"], "relation": "eq"|"le"|"ge",
//                     "value": "<expression>"}, ...]}
// A report object (with "input"."scenario") is accepted in place of a scenario.
Scenario scenario_from_json(const Json& doc, const Rational& bracket_tolerance);
Scenario load_scenario(const std::string& path, const Rational& bracket_tolerance);
Json read_json_file(const std::string& path);

// The scenario part of a document: `doc` itself or the echo inside a report.
const Json& scenario_section(const Json& doc);

Json to_json(const Rational& value);
Rational rational_from_json(const Json& value);
Json to_json(const ScalarInterval& value);
Json to_json(const EventMask& event, const EventSpace& space);  // sign strings
Json to_json(const Scenario& scenario);                          // canonical scenario form
Json to_json(const AtomMeasure& measure);
Json to_json(const PartialSetFunction& sf);
Json to_json(const ValidationReport& report, const EventSpace& space);
Json to_json(const std::vector<Check>& checks);
Json to_json(const FeasibilityOutcome& outcome, const Scenario& scenario);

AtomMeasure atom_measure_from_json(const Json& doc);
PartialSetFunction set_function_from_json(const Json& doc);

}  // namespace ctxkit::io
