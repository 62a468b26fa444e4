#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace ctxkit {

// Exact rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Canonical "p/q" form; integers are written with an explicit "/1".
std::string to_string(const Rational& value);

// Parses "p", "p/q", or a decimal literal such as "-0.125". Throws InputError.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace ctxkit
