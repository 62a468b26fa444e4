#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace ctxkit {

inline constexpr std::size_t kMaxVariables = 16;

// Subset of the atoms of an EventSpace, stored as a bitmask over atom indices.
// All binary operations require both operands to come from spaces with the
// same atom count.
class EventMask {
 public:
  EventMask() = default;
  explicit EventMask(std::size_t atom_count) : bits_(atom_count) {}

  static EventMask empty(std::size_t atom_count) { return EventMask(atom_count); }
  static EventMask full(std::size_t atom_count);
  static EventMask from_indices(std::size_t atom_count, const std::vector<std::size_t>& atoms);

  std::size_t atom_count() const { return bits_.size(); }
  bool contains(std::size_t atom) const { return bits_.test(atom); }
  void insert(std::size_t atom) { bits_.set(atom); }
  std::size_t size() const { return bits_.count(); }
  bool is_empty() const { return bits_.none(); }
  bool is_full() const { return bits_.all(); }

  EventMask complement() const;
  EventMask operator|(const EventMask& other) const;
  EventMask operator&(const EventMask& other) const;
  bool disjoint_from(const EventMask& other) const { return !bits_.intersects(other.bits_); }
  bool subset_of(const EventMask& other) const { return bits_.is_subset_of(other.bits_); }
  bool proper_subset_of(const EventMask& other) const {
    return bits_.is_proper_subset_of(other.bits_);
  }

  // Ascending atom indices.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const EventMask& a, const EventMask& b) { return a.bits_ == b.bits_; }
  // Orders by size, then by ascending index list; used for deterministic output.
  friend bool operator<(const EventMask& a, const EventMask& b);

 private:
  boost::dynamic_bitset<std::uint64_t> bits_;
};

// Finite sample space of n named +/-1 variables with 2^n atoms.
// Atom ordering: the first variable is the most significant bit of the atom
// index and a clear bit means +1, so atom 0 is "++...+" and the last atom is
// "--...-".
class EventSpace {
 public:
  // Throws InputError on an empty list, empty or duplicate names, or n > 16.
  explicit EventSpace(std::vector<std::string> names);

  std::size_t variable_count() const { return names_.size(); }
  std::size_t atom_count() const { return std::size_t{1} << names_.size(); }
  const std::vector<std::string>& variables() const { return names_; }

  // Throws InputError for unknown names.
  std::size_t variable_index(std::string_view name) const;
  bool has_variable(std::string_view name) const;

  // +1 or -1: the value variable `var` takes on `atom`.
  int sign(std::size_t atom, std::size_t var) const {
    return ((atom >> (names_.size() - 1 - var)) & 1U) ? -1 : 1;
  }

  // Sign string such as "+-+" for an atom index.
  std::string signature(std::size_t atom) const;
  // Inverse of signature(); accepts '-' or U+2212 for minus. Throws InputError.
  std::size_t atom_index(std::string_view signature) const;

  EventMask empty_event() const { return EventMask::empty(atom_count()); }
  EventMask sample_space() const { return EventMask::full(atom_count()); }
  EventMask atom_event(std::size_t atom) const;

  // Atoms on which `variable` equals `sign` (+1 or -1).
  EventMask sign_event(std::string_view variable, int sign) const;

  // Per-atom product of the signs of `subset`. Throws on empty or repeated subsets.
  std::vector<int> moment_coefficients(const std::vector<std::string>& subset) const;

  // Resolves names to indices, enforcing non-empty and no repeats.
  std::vector<std::size_t> resolve_subset(const std::vector<std::string>& subset) const;

  friend bool operator==(const EventSpace& a, const EventSpace& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

inline EventSpace build_space(std::vector<std::string> names) {
  return EventSpace(std::move(names));
}

// "A*B*C" style label for a moment subset.
std::string moment_label(const std::vector<std::string>& subset);

}  // namespace ctxkit
