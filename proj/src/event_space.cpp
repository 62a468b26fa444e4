#include "ctxkit/event_space.hpp"

#include <algorithm>
#include <set>

#include "ctxkit/errors.hpp"

namespace ctxkit {

EventMask EventMask::full(std::size_t atom_count) {
  EventMask m(atom_count);
  m.bits_.set();
  return m;
}

EventMask EventMask::from_indices(std::size_t atom_count, const std::vector<std::size_t>& atoms) {
  EventMask m(atom_count);
  for (std::size_t a : atoms) {
    if (a >= atom_count) throw InputError("atom index " + std::to_string(a) + " out of range");
    m.bits_.set(a);
  }
  return m;
}

EventMask EventMask::complement() const {
  EventMask m(*this);
  m.bits_.flip();
  return m;
}

EventMask EventMask::operator|(const EventMask& other) const {
  EventMask m(*this);
  m.bits_ |= other.bits_;
  return m;
}

EventMask EventMask::operator&(const EventMask& other) const {
  EventMask m(*this);
  m.bits_ &= other.bits_;
  return m;
}

std::vector<std::size_t> EventMask::indices() const {
  std::vector<std::size_t> out;
  out.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != decltype(bits_)::npos; i = bits_.find_next(i)) {
    out.push_back(i);
  }
  return out;
}

bool operator<(const EventMask& a, const EventMask& b) {
  if (a.bits_.size() != b.bits_.size()) return a.bits_.size() < b.bits_.size();
  auto na = a.size();
  auto nb = b.size();
  if (na != nb) return na < nb;
  return a.indices() < b.indices();
}

EventSpace::EventSpace(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InputError("event space needs at least one variable");
  if (names_.size() > kMaxVariables) {
    throw InputError("size limit: at most " + std::to_string(kMaxVariables) + " variables, got " +
                     std::to_string(names_.size()));
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("variable names must be nonempty");
    if (!seen.insert(n).second) throw InputError("duplicate variable name '" + n + "'");
  }
}

std::size_t EventSpace::variable_index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

bool EventSpace::has_variable(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::string EventSpace::signature(std::size_t atom) const {
  std::string out(names_.size(), '+');
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (sign(atom, v) < 0) out[v] = '-';
  }
  return out;
}

std::size_t EventSpace::atom_index(std::string_view sig) const {
  std::vector<int> bits;
  for (std::size_t i = 0; i < sig.size();) {
    if (sig[i] == '+') {
      bits.push_back(0);
      i += 1;
    } else if (sig[i] == '-') {
      bits.push_back(1);
      i += 1;
    } else if (sig.substr(i, 3) == "\xE2\x88\x92") {  // U+2212
      bits.push_back(1);
      i += 3;
    } else {
      throw InputError("invalid sign string '" + std::string(sig) + "'");
    }
  }
  if (bits.size() != names_.size()) {
    throw InputError("sign string '" + std::string(sig) + "' does not have length " +
                     std::to_string(names_.size()));
  }
  std::size_t index = 0;
  for (int b : bits) index = (index << 1) | static_cast<std::size_t>(b);
  return index;
}

EventMask EventSpace::atom_event(std::size_t atom) const {
  return EventMask::from_indices(atom_count(), {atom});
}

EventMask EventSpace::sign_event(std::string_view variable, int sign) const {
  if (sign != 1 && sign != -1) throw InputError("sign must be +1 or -1");
  std::size_t v = variable_index(variable);
  EventMask m(atom_count());
  for (std::size_t a = 0; a < atom_count(); ++a) {
    if (this->sign(a, v) == sign) m.insert(a);
  }
  return m;
}

std::vector<std::size_t> EventSpace::resolve_subset(const std::vector<std::string>& subset) const {
  if (subset.empty()) throw InputError("moment subset must be nonempty");
  std::vector<std::size_t> out;
  for (const auto& name : subset) {
    std::size_t v = variable_index(name);
    if (std::find(out.begin(), out.end(), v) != out.end()) {
      throw InputError("variable '" + name + "' repeated in moment");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<int> EventSpace::moment_coefficients(const std::vector<std::string>& subset) const {
  auto vars = resolve_subset(subset);
  std::vector<int> out(atom_count(), 1);
  for (std::size_t a = 0; a < atom_count(); ++a) {
    for (std::size_t v : vars) out[a] *= sign(a, v);
  }
  return out;
}

std::string moment_label(const std::vector<std::string>& subset) {
  std::string out;
  for (const auto& name : subset) {
    if (!out.empty()) out += '*';
    out += name;
  }
  return out;
}

}  // namespace ctxkit
