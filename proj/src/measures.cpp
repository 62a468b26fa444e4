#include "ctxkit/measures.hpp"

#include <algorithm>
#include <set>

#include "ctxkit/errors.hpp"

namespace ctxkit {

std::string to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Standard:
      return "standard";
    case AtomKind::LowerAtoms:
      return "lower-atoms";
    case AtomKind::UpperAtoms:
      return "upper-atoms";
  }
  return "?";
}

std::string to_string(SetFunctionKind kind) {
  return kind == SetFunctionKind::Upper ? "upper" : "lower";
}

AtomKind parse_atom_kind(const std::string& text) {
  if (text == "standard") return AtomKind::Standard;
  if (text == "lower-atoms") return AtomKind::LowerAtoms;
  if (text == "upper-atoms") return AtomKind::UpperAtoms;
  throw InputError("unknown measure kind '" + text + "'");
}

SetFunctionKind parse_set_function_kind(const std::string& text) {
  if (text == "upper") return SetFunctionKind::Upper;
  if (text == "lower") return SetFunctionKind::Lower;
  throw InputError("unknown set function kind '" + text + "'");
}

AtomMeasure::AtomMeasure(EventSpace s, std::vector<Rational> v, AtomKind k)
    : space(std::move(s)), values(std::move(v)), kind(k) {
  if (values.size() != space.atom_count()) {
    throw InputError("measure has " + std::to_string(values.size()) + " values for " +
                     std::to_string(space.atom_count()) + " atoms");
  }
}

Rational AtomMeasure::total() const {
  Rational sum = 0;
  for (const auto& v : values) sum += v;
  return sum;
}

Rational AtomMeasure::mass(const EventMask& event) const {
  Rational sum = 0;
  for (std::size_t a : event.indices()) sum += values[a];
  return sum;
}

std::optional<Rational> PartialSetFunction::get(const EventMask& event) const {
  auto it = entries.find(event);
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

ValidationReport validate(const AtomMeasure& measure) {
  ValidationReport report;
  const auto& space = measure.space;
  for (std::size_t a = 0; a < measure.values.size(); ++a) {
    const Rational& v = measure.values[a];
    if (v < 0) {
      report.violations.push_back(
          {"nonnegativity", "atom " + space.signature(a) + " has value " + to_string(v), {space.atom_event(a)}});
    } else if (measure.kind != AtomKind::Standard && v > 1) {
      report.violations.push_back(
          {"(i)", "atom " + space.signature(a) + " exceeds 1: " + to_string(v), {space.atom_event(a)}});
    }
  }
  Rational total = measure.total();
  switch (measure.kind) {
    case AtomKind::Standard:
      if (total != 1) {
        report.violations.push_back({"normalization", "atom values sum to " + to_string(total), {}});
      }
      break;
    case AtomKind::LowerAtoms:
      if (total > 1) {
        report.violations.push_back(
            {"(iv)", "lower atom values sum to " + to_string(total) + " > 1", {space.sample_space()}});
      }
      break;
    case AtomKind::UpperAtoms:
      if (total < 1) {
        report.violations.push_back(
            {"(iv)", "upper atom values sum to " + to_string(total) + " < 1", {space.sample_space()}});
      }
      break;
  }
  return report;
}

ValidationReport validate(const PartialSetFunction& sf) {
  ValidationReport report;
  const std::size_t atoms = sf.space.atom_count();
  for (const auto& [event, value] : sf.entries) {
    if (event.atom_count() != atoms) {
      report.violations.push_back({"domain", "event from a different space", {event}});
      return report;
    }
    if (value < 0 || value > 1) {
      report.violations.push_back({"(i)", "value " + to_string(value) + " outside [0,1]", {event}});
    }
  }
  if (auto v = sf.get(sf.space.empty_event()); v && *v != 0) {
    report.violations.push_back({"(ii)", "value of the empty set is " + to_string(*v), {sf.space.empty_event()}});
  }
  if (auto v = sf.get(sf.space.sample_space()); v && *v != 1) {
    report.violations.push_back({"(iii)", "value of Omega is " + to_string(*v), {sf.space.sample_space()}});
  }

  // Axiom (iv) on disjoint pairs whose union is specified. Entries are bucketed
  // by size so that only size combinations matching a specified union are scanned.
  std::map<std::size_t, std::vector<const std::pair<const EventMask, Rational>*>> by_size;
  for (const auto& entry : sf.entries) by_size[entry.first.size()].push_back(&entry);
  for (auto it1 = by_size.begin(); it1 != by_size.end(); ++it1) {
    for (auto it2 = it1; it2 != by_size.end(); ++it2) {
      if (!by_size.count(it1->first + it2->first)) continue;
      const auto& bucket1 = it1->second;
      const auto& bucket2 = it2->second;
      for (std::size_t i = 0; i < bucket1.size(); ++i) {
        std::size_t j0 = (it1 == it2) ? i + 1 : 0;
        for (std::size_t j = j0; j < bucket2.size(); ++j) {
          const auto& [e1, v1] = *bucket1[i];
          const auto& [e2, v2] = *bucket2[j];
          if (!e1.disjoint_from(e2)) continue;
          auto uv = sf.get(e1 | e2);
          if (!uv) continue;
          bool ok = sf.kind == SetFunctionKind::Upper ? *uv <= v1 + v2 : *uv >= v1 + v2;
          if (!ok) {
            report.violations.push_back(
                {"(iv)",
                 std::string(sf.kind == SetFunctionKind::Upper ? "subadditivity" : "superadditivity") +
                     " fails: value of union " + to_string(*uv) + " vs " + to_string(v1) + " + " + to_string(v2),
                 {e1, e2}});
          }
        }
      }
    }
  }
  return report;
}

namespace {

Rational signed_sum(const AtomMeasure& measure, const std::vector<std::string>& subset) {
  auto coeffs = measure.space.moment_coefficients(subset);
  Rational sum = 0;
  for (std::size_t a = 0; a < coeffs.size(); ++a) {
    if (coeffs[a] > 0) {
      sum += measure.values[a];
    } else {
      sum -= measure.values[a];
    }
  }
  return sum;
}

}  // namespace

Rational expectation(const AtomMeasure& measure, const std::vector<std::string>& subset) {
  if (measure.kind != AtomKind::Standard) {
    throw InputError("expectation needs a standard measure; use signed_atom_sum for " + to_string(measure.kind));
  }
  return signed_sum(measure, subset);
}

Rational signed_atom_sum(const AtomMeasure& measure, const std::vector<std::string>& subset) {
  return signed_sum(measure, subset);
}

Rational conditional_expectation(const AtomMeasure& measure, const std::vector<std::string>& subset,
                                 const std::string& given, int sign) {
  if (measure.kind != AtomKind::Standard) throw InputError("conditional expectation needs a standard measure");
  auto coeffs = measure.space.moment_coefficients(subset);
  EventMask condition = measure.space.sign_event(given, sign);
  Rational prob = measure.mass(condition);
  if (prob == 0) {
    throw UndefinedConditional("P(" + given + (sign > 0 ? "=+1" : "=-1") + ") is zero");
  }
  Rational sum = 0;
  for (std::size_t a : condition.indices()) sum += coeffs[a] * measure.values[a];
  return sum / prob;
}

Rational event_expectation(const PartialSetFunction& sf, const std::string& variable) {
  auto plus = sf.get(sf.space.sign_event(variable, 1));
  auto minus = sf.get(sf.space.sign_event(variable, -1));
  if (!plus || !minus) throw InputError("sign events of '" + variable + "' are not specified");
  return *plus - *minus;
}

std::vector<EventMask> witness_domain(const EventSpace& space) {
  std::vector<EventMask> out;
  out.push_back(space.empty_event());
  for (std::size_t a = 0; a < space.atom_count(); ++a) out.push_back(space.atom_event(a));
  for (const auto& v : space.variables()) {
    out.push_back(space.sign_event(v, 1));
    out.push_back(space.sign_event(v, -1));
  }
  out.push_back(space.sample_space());
  return out;
}

PartialSetFunction additive_set_function(const AtomMeasure& measure, SetFunctionKind kind,
                                         const std::vector<EventMask>& domain) {
  PartialSetFunction sf(measure.space, kind);
  for (const auto& e : domain) sf.set(e, measure.mass(e));
  return sf;
}

std::vector<MonotonicityViolation> check_monotonicity(const PartialSetFunction& sf) {
  std::vector<MonotonicityViolation> out;
  for (const auto& [small, vs] : sf.entries) {
    for (const auto& [large, vl] : sf.entries) {
      if (small.proper_subset_of(large) && vs > vl) out.push_back({small, large, vs, vl});
    }
  }
  return out;
}

namespace {

struct AtomTable {
  std::vector<std::optional<Rational>> values;

  explicit AtomTable(const PartialSetFunction& sf) : values(sf.space.atom_count()) {
    for (const auto& [e, v] : sf.entries) {
      if (e.size() == 1) values[e.indices().front()] = v;
    }
  }
};

// Largest total of a disjoint packing of `x` by specified lower events of the
// form "one specified event plus specified atoms".
Rational packing_bound(const PartialSetFunction& lower, const AtomTable& atoms, const EventMask& x) {
  if (auto v = lower.get(x)) return *v;
  auto atom_sum = [&](const EventMask& region) {
    Rational s = 0;
    for (std::size_t a : region.indices()) {
      if (atoms.values[a]) s += *atoms.values[a];
    }
    return s;
  };
  Rational best = atom_sum(x);
  for (const auto& [e, v] : lower.entries) {
    if (e.size() <= 1 || !e.subset_of(x)) continue;
    best = std::max(best, Rational(v + atom_sum(x & e.complement())));
  }
  return std::max(best, Rational(0));
}

// Smallest sum over a partition of `x` into one specified upper event and
// specified atoms; 1 when no such partition exists.
Rational partition_bound(const PartialSetFunction& upper, const AtomTable& atoms, const EventMask& x) {
  if (auto v = upper.get(x)) return *v;
  if (x.is_empty()) return 0;
  auto atom_sum = [&](const EventMask& region) -> std::optional<Rational> {
    Rational s = 0;
    for (std::size_t a : region.indices()) {
      if (!atoms.values[a]) return std::nullopt;
      s += *atoms.values[a];
    }
    return s;
  };
  Rational best = 1;
  if (auto s = atom_sum(x)) best = std::min(best, *s);
  for (const auto& [e, v] : upper.entries) {
    if (e.size() <= 1 || !e.subset_of(x)) continue;
    if (auto s = atom_sum(x & e.complement())) best = std::min(best, Rational(v + *s));
  }
  return best;
}

}  // namespace

ConjugacyReport check_conjugacy(const PartialSetFunction& upper, const PartialSetFunction& lower) {
  if (!(upper.space == lower.space)) throw InputError("conjugacy check needs functions on the same space");
  ConjugacyReport report;
  AtomTable upper_atoms(upper);
  AtomTable lower_atoms(lower);

  std::set<EventMask> candidates;
  for (const auto& [e, v] : upper.entries) candidates.insert(e);
  for (const auto& [e, v] : lower.entries) candidates.insert(e.complement());

  for (const auto& event : candidates) {
    EventMask complement = event.complement();
    auto u = upper.get(event);
    auto l = lower.get(complement);
    if (u && l) {
      ++report.direct_checks;
      if (*u != 1 - *l) {
        report.violations.push_back({event, ConjugacyViolation::Basis::Direct, *u, *u, *l, *l});
      }
      continue;
    }
    Rational upper_lo = u ? *u : std::max(Rational(0), Rational(1 - partition_bound(upper, upper_atoms, complement)));
    Rational upper_hi = u ? *u : std::min(Rational(1), partition_bound(upper, upper_atoms, event));
    Rational lower_lo = l ? *l : packing_bound(lower, lower_atoms, complement);
    Rational lower_hi = l ? *l : std::min(Rational(1), Rational(1 - packing_bound(lower, lower_atoms, event)));
    // need some P*(E) in [upper_lo, upper_hi] equal to 1 - P_*(not E) in [1 - lower_hi, 1 - lower_lo]
    Rational need_lo = 1 - lower_hi;
    Rational need_hi = 1 - lower_lo;
    if (upper_lo > upper_hi || lower_lo > lower_hi) {
      report.unextendable.push_back(event);
      continue;
    }
    bool compatible = upper_lo <= need_hi && need_lo <= upper_hi;
    if (!compatible) {
      report.violations.push_back(
          {event, ConjugacyViolation::Basis::Forced, upper_lo, upper_hi, lower_lo, lower_hi});
    }
  }
  return report;
}

}  // namespace ctxkit
