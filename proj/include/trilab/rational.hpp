#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

namespace trilab {

/// Exact rational scalar used for every structural quantity in the library.
using Rat = mpq_class;
using Int = mpz_class;

/// Builds num/den in lowest terms; throws std::invalid_argument if den == 0.
Rat make_rat(long num, long den);

/// Parses "p", "+p", "-p" or "p/q" with arbitrary-precision parts.
/// A negative denominator is normalized onto the numerator.
Rat parse_rat(const std::string& text);

/// Canonical text form: "p" when the denominator is 1, else "p/q" in lowest
/// terms with the sign on the numerator.
std::string rat_str(const Rat& q);

/// Decimal rendering with `digits` significant digits (%g style), for CSV and
/// human-facing output. Deterministic for a given value and digit count.
std::string decimal_str(const Rat& q, int digits);
std::string decimal_str(long double v, int digits);

double rat_double(const Rat& q);

/// Conversion with a 64-bit mantissa extracted from the numerator and
/// denominator separately, so values far outside double range (e.g. q^n at
/// deep levels) keep long-double accuracy instead of collapsing to 0 or inf.
long double rat_ldouble(const Rat& q);

/// base^exp for integer exp (negative allowed when base != 0).
Rat rat_pow(const Rat& base, long exp);

/// Rising factorial (s)(s+1)...(s+n-1); empty product for n == 0.
Rat rising_factorial(const Rat& s, int n);

Int factorial(int n);
Int binomial(int n, int k);

/// Uniform dyadic rational in [0,1) with a 128-bit denominator, drawn from two
/// engine words. Comparing it against exact rational CDFs gives inverse-CDF
/// sampling with bias below 2^-128.
Rat dyadic_uniform(std::mt19937_64& rng);

}  // namespace trilab
