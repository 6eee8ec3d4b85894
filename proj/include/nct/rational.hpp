#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace nct {

/// Exact rational with arbitrary-precision numerator and denominator, always
/// kept in canonical (reduced, positive denominator) form.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses `a/b`, an integer, or a finite decimal (`0.25`, `.5`, `-1.75`)
/// exactly. Throws Error{ParseError} on anything else, including b = 0.
Rational parse_rational(std::string_view text);

/// Always renders as `a/b`, including integers (`1/1`).
std::string to_fraction_string(const Rational& q);

/// r^(-l) as an exact rational.
Rational inverse_power(std::uint32_t radix, std::uint64_t exponent);

[[nodiscard]] inline double to_double(const Rational& q) { return q.get_d(); }

/// Shortest round-trip-stable rendering used by every text output.
std::string format_double(double value);

}  // namespace nct
