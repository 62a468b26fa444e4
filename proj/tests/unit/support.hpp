#pragma once

// Shared generators and independent oracles for the unit tests.

#include <cstdint>
#include <random>
#include <vector>

#include "ctxkit/rational.hpp"
#include "ctxkit/simplex.hpp"

namespace testkit {

using ctxkit::Rational;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  // Uniform numerator over a random denominator in [1, max_den].
  Rational rational(long num_abs, long max_den) {
    long den = integer(1, max_den);
    return Rational(integer(-num_abs, num_abs), den);
  }

  // Rational in [lo, hi] on a grid of the given resolution.
  Rational in_range(const Rational& lo, const Rational& hi, long resolution = 1000) {
    long k = integer(0, resolution);
    return lo + (hi - lo) * Rational(k, resolution);
  }

  bool coin() { return integer(0, 1) == 1; }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Fourier-Motzkin elimination: decides whether {x >= 0, rows} has a solution.
// Exponential, fine for the handful of variables used in tests.
inline bool fm_feasible(const ctxkit::lp::LinearProgram& lp) {
  using ctxkit::lp::Relation;
  struct Ineq {
    std::vector<Rational> a;
    Rational b;  // a . x <= b
  };
  const std::size_t n = lp.variable_count;
  std::vector<Ineq> sys;
  for (const auto& row : lp.rows) {
    std::vector<Rational> neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -row.coeffs[j];
    if (row.relation != Relation::Ge) sys.push_back({row.coeffs, row.rhs});
    if (row.relation != Relation::Le) sys.push_back({neg, Rational(-row.rhs)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> a(n, Rational(0));
    a[j] = -1;
    sys.push_back({a, Rational(0)});
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Ineq> pos, neg, next;
    for (auto& q : sys) {
      if (q.a[k] > 0) {
        pos.push_back(q);
      } else if (q.a[k] < 0) {
        neg.push_back(q);
      } else {
        next.push_back(q);
      }
    }
    for (const auto& p : pos) {
      for (const auto& m : neg) {
        Rational sp = -m.a[k];
        Rational sm = p.a[k];
        Ineq c{std::vector<Rational>(n), sp * p.b + sm * m.b};
        for (std::size_t j = 0; j < n; ++j) c.a[j] = sp * p.a[j] + sm * m.a[j];
        next.push_back(std::move(c));
      }
    }
    sys = std::move(next);
  }
  for (const auto& q : sys) {
    if (q.b < 0) return false;
  }
  return true;
}

}  // namespace testkit
