#pragma once

#include <string>
#include <vector>

#include "lfpoly/behaviour.hpp"
#include "lfpoly/geometry.hpp"
#include "lfpoly/rational.hpp"

namespace lfpoly {

/// coefficients . p <= bound, integer with gcd 1 over coefficients and bound.
struct Inequality {
  IntegerVector coefficients;
  Integer bound;
  std::string label;

  bool operator==(const Inequality& other) const {
    return coefficients == other.coefficients && bound == other.bound;
  }
};

/// Divides by the positive gcd; the direction of the inequality is kept.
Inequality canonical(Inequality ineq);
Inequality from_constraint(const geometry::LinearConstraint& c, std::string label = {});
geometry::LinearConstraint to_constraint(const Inequality& ineq);

/// Lexicographic order on (coefficients, bound), for stable output.
bool operator<(const Inequality& lhs, const Inequality& rhs);

struct InequalityValue {
  Rational value;
  bool satisfied = true;
};

Rational evaluate(const Inequality& ineq, std::span<const Rational> point);
InequalityValue evaluate_inequality(const Behaviour& b, const Inequality& ineq);

/// sum (-1)^(xy+a+b) p(ab|xy) <= 2 between parties `first` and `second` on
/// settings {0,1} x {0,1}, outcomes 0/1, other parties summed out at setting 0.
Inequality chsh_inequality(const Scenario& s, std::size_t first = 0, std::size_t second = 1);

}  // namespace lfpoly
