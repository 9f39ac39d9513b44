#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stab {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "12", "-3/4", "0.125", "1e-3", "-2.5E+2". Decimal forms are read
// exactly (0.1 is 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

// num/den in lowest terms; throws InputError when den == 0.
Rational fraction(const Integer& num, const Integer& den);

// Exact value of a finite double.
Rational rational_from_double(double x);

// "num/den", or just "num" when den == 1.
std::string to_fraction_string(const Rational& q);

// Shortest exact decimal if the value has a terminating expansion with at
// most `max_digits` fractional digits, otherwise empty.
std::string to_exact_decimal(const Rational& q, int max_digits = 32);

// Fixed-point rendering for reports; not exact.
std::string to_decimal_string(const Rational& q, int digits = 12);

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

Integer lcm_of_denominators(const Rational* first, const Rational* last);

}  // namespace stab
