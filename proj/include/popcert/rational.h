// Exact rational scalars backed by GMP.
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace popcert {

/// Arbitrary-precision rational; always kept canonical (reduced, den > 0).
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "num/den" (den > 0) or a bare integer. Throws std::invalid_argument.
Rational ParseRational(std::string_view text);

/// Canonical "num/den" form; integers are written with "/1".
std::string ToString(const Rational& value);

/// Exact conversion of a finite double (binary floats are dyadic rationals).
Rational FromDouble(double value);

/// Nearest rational with denominator 2^denom_power.
Rational RoundToDyadic(double value, int denom_power);

double ToDouble(const Rational& value);

Rational Pow(const Rational& base, unsigned exponent);

}  // namespace popcert
