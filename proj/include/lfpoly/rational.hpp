#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace lfpoly {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

/// Serializes as "num/den" (den > 0, reduced). Integers keep the "/1".
std::string to_string(const Rational& value);

/// Accepts "num/den" or a bare integer. Throws Error(ParseError).
Rational parse_rational(const std::string& text);

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs);

/// Clears denominators and divides by the gcd of all entries; the sign is preserved.
IntegerVector primitive_integer_vector(std::span<const Rational> values);

/// Lexicographic comparison of equal-length vectors.
bool lex_less(std::span<const Rational> lhs, std::span<const Rational> rhs);

/// Sorts lexicographically and removes exact duplicates.
void sort_unique(std::vector<RationalVector>& points);

}  // namespace lfpoly
