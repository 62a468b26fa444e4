#pragma once

#include <string>

#include "ctxkit/rational.hpp"

namespace ctxkit {

// Closed interval [lo, hi] with exact rational endpoints.
class ScalarInterval {
 public:
  ScalarInterval() = default;
  explicit ScalarInterval(Rational exact) : lo_(exact), hi_(exact) {}
  ScalarInterval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool is_exact() const { return lo_ == hi_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
  bool subset_of(const ScalarInterval& other) const {
    return other.lo_ <= lo_ && hi_ <= other.hi_;
  }

  friend ScalarInterval operator+(const ScalarInterval& a, const ScalarInterval& b);
  friend ScalarInterval operator-(const ScalarInterval& a, const ScalarInterval& b);
  friend ScalarInterval operator*(const ScalarInterval& a, const ScalarInterval& b);
  // Throws DomainError when `b` contains zero.
  friend ScalarInterval operator/(const ScalarInterval& a, const ScalarInterval& b);
  friend ScalarInterval operator-(const ScalarInterval& a);
  friend bool operator==(const ScalarInterval& a, const ScalarInterval& b) = default;

 private:
  Rational lo_{0};
  Rational hi_{0};
};

// Enclosure of sqrt over [x.lo, x.hi] on the dyadic grid of step 2^-bits.
// Exact when the argument is a zero-width perfect square. Throws DomainError
// when hi < 0; a lower endpoint below zero is clamped to zero.
ScalarInterval sqrt_enclosure(const ScalarInterval& x, unsigned bits);

std::string to_string(const ScalarInterval& x);

}  // namespace ctxkit
