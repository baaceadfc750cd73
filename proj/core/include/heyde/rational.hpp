#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace heyde {

/// Exact rational number. Always kept in lowest terms.
using Rational = mpq_class;

/// Builds num/den in canonical form. `den` must be nonzero.
Rational rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p", "-p", "p/q" (decimal integers, no whitespace). Throws InputError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Numerator and denominator as decimal strings (denominator positive).
std::string numerator_string(const Rational& q);
std::string denominator_string(const Rational& q);

}  // namespace heyde
