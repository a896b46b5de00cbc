#include "lfpoly/inequality.hpp"

#include <algorithm>

#include "lfpoly/error.hpp"

namespace lfpoly {

Inequality canonical(Inequality ineq) {
  Integer g = abs(ineq.bound);
  for (const auto& c : ineq.coefficients) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    for (auto& c : ineq.coefficients) c /= g;
    ineq.bound /= g;
  }
  return ineq;
}

Inequality from_constraint(const geometry::LinearConstraint& c, std::string label) {
  RationalVector all(c.coefficients);
  all.push_back(c.bound);
  // Only positive rescaling is allowed, primitive_integer_vector keeps signs.
  auto integral = primitive_integer_vector(all);
  Inequality ineq;
  ineq.bound = integral.back();
  integral.pop_back();
  ineq.coefficients = std::move(integral);
  ineq.label = std::move(label);
  return ineq;
}

geometry::LinearConstraint to_constraint(const Inequality& ineq) {
  geometry::LinearConstraint c;
  for (const auto& v : ineq.coefficients) c.coefficients.emplace_back(v);
  c.bound = Rational(ineq.bound);
  return c;
}

bool operator<(const Inequality& lhs, const Inequality& rhs) {
  if (lhs.coefficients != rhs.coefficients) {
    return std::lexicographical_compare(lhs.coefficients.begin(), lhs.coefficients.end(), rhs.coefficients.begin(),
                                        rhs.coefficients.end());
  }
  return lhs.bound < rhs.bound;
}

Rational evaluate(const Inequality& ineq, std::span<const Rational> point) {
  if (point.size() != ineq.coefficients.size()) {
    throw Error(ErrorKind::DimensionMismatch, "inequality has " + std::to_string(ineq.coefficients.size()) +
                                                  " coefficients, point has " + std::to_string(point.size()));
  }
  Rational value = 0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (sgn(ineq.coefficients[j]) != 0 && sgn(point[j]) != 0) value += ineq.coefficients[j] * point[j];
  }
  return value;
}

InequalityValue evaluate_inequality(const Behaviour& b, const Inequality& ineq) {
  InequalityValue out;
  out.value = evaluate(ineq, b.entries());
  out.satisfied = out.value <= ineq.bound;
  return out;
}

Inequality chsh_inequality(const Scenario& s, std::size_t first, std::size_t second) {
  if (first == second || first >= s.parties() || second >= s.parties() || s.settings(first) < 2 ||
      s.settings(second) < 2) {
    throw Error(ErrorKind::IncompatibleScenario, "CHSH needs two parties with two settings");
  }
  const Layout layout(s);
  Inequality ineq;
  ineq.coefficients.assign(layout.dimension(), 0);
  ineq.bound = 2;
  ineq.label = "CHSH";
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    const auto& x = layout.context(k);
    bool on = x[first] < 2 && x[second] < 2;
    for (std::size_t i = 0; i < x.size(); ++i) on = on && (i == first || i == second || x[i] == 0);
    if (!on) continue;
    for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
      const auto a = layout.outcomes_at(k, local);
      if (a[first] > 1 || a[second] > 1) continue;
      const int parity = (x[first] * x[second] + a[first] + a[second]) % 2;
      ineq.coefficients[layout.offset(k) + local] = parity == 0 ? 1 : -1;
    }
  }
  return ineq;
}

}  // namespace lfpoly
