#include "ctxkit/interval.hpp"

#include <algorithm>
#include <array>

#include "ctxkit/errors.hpp"

namespace ctxkit {

namespace bmp = boost::multiprecision;

ScalarInterval::ScalarInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw InputError("interval with lo > hi");
}

ScalarInterval operator+(const ScalarInterval& a, const ScalarInterval& b) {
  return {a.lo_ + b.lo_, a.hi_ + b.hi_};
}

ScalarInterval operator-(const ScalarInterval& a, const ScalarInterval& b) {
  return {a.lo_ - b.hi_, a.hi_ - b.lo_};
}

ScalarInterval operator-(const ScalarInterval& a) { return {-a.hi_, -a.lo_}; }

ScalarInterval operator*(const ScalarInterval& a, const ScalarInterval& b) {
  if (a.is_exact() && b.is_exact()) return ScalarInterval(a.lo_ * b.lo_);
  std::array<Rational, 4> p{a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  auto [mn, mx] = std::minmax_element(p.begin(), p.end());
  return {*mn, *mx};
}

ScalarInterval operator/(const ScalarInterval& a, const ScalarInterval& b) {
  if (b.contains_zero()) throw DomainError("division by an interval containing zero");
  if (b.is_exact()) return a * ScalarInterval(Rational(1) / b.lo_);
  return a * ScalarInterval(Rational(1) / b.hi_, Rational(1) / b.lo_);
}

namespace {

bool perfect_square(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  root = bmp::sqrt(n);
  return root * root == n;
}

// floor(x * 4^bits) for x >= 0
BigInt scaled_floor(const Rational& x, unsigned bits) {
  BigInt num = bmp::numerator(x);
  num <<= 2 * bits;
  return num / bmp::denominator(x);
}

BigInt scaled_ceil(const Rational& x, unsigned bits) {
  BigInt num = bmp::numerator(x);
  num <<= 2 * bits;
  const BigInt& den = bmp::denominator(x);
  BigInt q = num / den;
  if (q * den != num) ++q;
  return q;
}

}  // namespace

ScalarInterval sqrt_enclosure(const ScalarInterval& x, unsigned bits) {
  if (x.hi() < 0) throw DomainError("square root of a negative number");
  Rational lo = x.lo() < 0 ? Rational(0) : x.lo();
  if (x.is_exact()) {
    BigInt rn;
    BigInt rd;
    if (perfect_square(bmp::numerator(lo), rn) && perfect_square(bmp::denominator(lo), rd)) {
      return ScalarInterval(Rational(rn, rd));
    }
  }
  BigInt scale = BigInt(1) << bits;
  BigInt lower = bmp::sqrt(scaled_floor(lo, bits));
  BigInt upper_arg = scaled_ceil(x.hi(), bits);
  BigInt upper = bmp::sqrt(upper_arg);
  if (upper * upper < upper_arg) ++upper;
  return {Rational(lower, scale), Rational(upper, scale)};
}

std::string to_string(const ScalarInterval& x) {
  if (x.is_exact()) return to_string(x.lo());
  return "[" + to_string(x.lo()) + ", " + to_string(x.hi()) + "]";
}

}  // namespace ctxkit
