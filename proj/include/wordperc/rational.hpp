#pragma once

// Exact arithmetic carrier shared by every module. mpq_class keeps values in
// canonical reduced form with a positive denominator.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wordperc {

using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, unsigned long den = 1);

Rational pow(const Rational& base, unsigned exponent);

Integer binomial(unsigned long n, unsigned long k);

/// "num/den", or just "num" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

/// Decimal expansion rounded half away from zero to `digits` places.
std::string to_decimal_string(const Rational& q, int digits = 12);

/// Accepts "a/b", integers, and plain decimals such as "0.25" (converted exactly).
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace wordperc
