#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxkit/event_space.hpp"
#include "ctxkit/rational.hpp"

namespace ctxkit {

enum class AtomKind { Standard, LowerAtoms, UpperAtoms };
enum class SetFunctionKind { Upper, Lower };

std::string to_string(AtomKind kind);
std::string to_string(SetFunctionKind kind);
AtomKind parse_atom_kind(const std::string& text);
SetFunctionKind parse_set_function_kind(const std::string& text);

// Nonnegative values on the atoms of a space.
struct AtomMeasure {
  EventSpace space;
  std::vector<Rational> values;
  AtomKind kind = AtomKind::Standard;

  AtomMeasure(EventSpace s, std::vector<Rational> v, AtomKind k = AtomKind::Standard);

  Rational total() const;
  // Sum of atom values over `event`.
  Rational mass(const EventMask& event) const;
};

// Upper or lower probability specified on a finite subset of events.
struct PartialSetFunction {
  EventSpace space;
  SetFunctionKind kind;
  std::map<EventMask, Rational> entries;

  PartialSetFunction(EventSpace s, SetFunctionKind k) : space(std::move(s)), kind(k) {}

  void set(const EventMask& event, Rational value) { entries.insert_or_assign(event, std::move(value)); }
  std::optional<Rational> get(const EventMask& event) const;
};

struct Violation {
  std::string axiom;  // "nonnegativity", "normalization", "(i)", "(ii)", "(iii)", "(iv)"
  std::string detail;
  std::vector<EventMask> events;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

ValidationReport validate(const AtomMeasure& measure);
ValidationReport validate(const PartialSetFunction& sf);

// E(prod subset) under a standard measure. Throws InputError for other kinds.
Rational expectation(const AtomMeasure& measure, const std::vector<std::string>& subset);

// Signed atom sum; equals expectation() on standard measures.
Rational signed_atom_sum(const AtomMeasure& measure, const std::vector<std::string>& subset);

// E(prod subset | given = sign). Throws UndefinedConditional if P(given = sign) = 0.
Rational conditional_expectation(const AtomMeasure& measure, const std::vector<std::string>& subset,
                                 const std::string& given, int sign);

// Event-level P(v = +1) - P(v = -1) from a set function. Throws if either side is unspecified.
Rational event_expectation(const PartialSetFunction& sf, const std::string& variable);

// The reduced domain used for witnesses: every atom, every sign event, empty set and Omega.
std::vector<EventMask> witness_domain(const EventSpace& space);

// Evaluates an additive measure on each event of `domain`.
PartialSetFunction additive_set_function(const AtomMeasure& measure, SetFunctionKind kind,
                                         const std::vector<EventMask>& domain);

struct MonotonicityViolation {
  EventMask smaller;
  EventMask larger;
  Rational smaller_value;
  Rational larger_value;
};

// Specified pairs smaller ⊂ larger with value(smaller) > value(larger).
std::vector<MonotonicityViolation> check_monotonicity(const PartialSetFunction& sf);

struct ConjugacyViolation {
  enum class Basis {
    Direct,  // P*(E) and P_*(not E) both specified and P*(E) != 1 - P_*(not E)
    Forced   // no extension obeying axiom (iv) can satisfy the relation
  };
  EventMask event;
  Basis basis;
  // Admissible range of P*(E) and of P_*(not E); equal ends when specified.
  Rational upper_lo;
  Rational upper_hi;
  Rational lower_complement_lo;
  Rational lower_complement_hi;
};

struct ConjugacyReport {
  std::vector<ConjugacyViolation> violations;
  // Events where one of the two partial functions admits no value obeying
  // axiom (iv); conjugacy is not judged there.
  std::vector<EventMask> unextendable;
  std::size_t direct_checks = 0;
  // No event had both sides specified.
  bool vacuous() const { return direct_checks == 0; }
};

// Tests P*(E) = 1 - P_*(not E). Events with both sides specified are compared
// exactly. When only one side is specified, bounds implied by axiom (iv) are
// used: P_*(F) is at least the mass of any disjoint packing of F by specified
// lower events, and P*(E) is at most the sum over any partition of E into
// specified upper events and at least 1 - P*(not E). A violation found this way
// holds for every extension of the partial functions.
ConjugacyReport check_conjugacy(const PartialSetFunction& upper, const PartialSetFunction& lower);

}  // namespace ctxkit
