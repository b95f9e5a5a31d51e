#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace kneadlab {

using Integer = mpz_class;
using Rational = mpq_class;

Integer parse_integer(std::string_view text);

/// Accepts "p/q" or "p"; the result is canonical (reduced, positive denominator).
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Converts to std::size_t; throws Error(invalid_input) when out of range.
std::size_t to_size(const Integer& value);

Integer floor_of(const Rational& value);

}  // namespace kneadlab
