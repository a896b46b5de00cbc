#include "lfpoly/rational.hpp"

#include <algorithm>
#include <numeric>

#include "lfpoly/error.hpp"

namespace lfpoly {

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  Rational out;
  if (out.set_str(text, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + text + "'");
  if (out.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  out.canonicalize();
  return out;
}

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs) {
  Rational sum = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (sgn(lhs[i]) != 0 && sgn(rhs[i]) != 0) sum += lhs[i] * rhs[i];
  }
  return sum;
}

IntegerVector primitive_integer_vector(std::span<const Rational> values) {
  Integer lcm = 1;
  for (const auto& v : values) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  IntegerVector out(values.size());
  Integer g = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i].get_num() * (lcm / values[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1) {
    for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

bool lex_less(std::span<const Rational> lhs, std::span<const Rational> rhs) {
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

void sort_unique(std::vector<RationalVector>& points) {
  std::sort(points.begin(), points.end(),
            [](const RationalVector& a, const RationalVector& b) { return lex_less(a, b); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

}  // namespace lfpoly
