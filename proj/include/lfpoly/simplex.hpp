#pragma once

#include <vector>

#include "lfpoly/geometry.hpp"
#include "lfpoly/rational.hpp"

namespace lfpoly::geometry {

/// minimize cost . x  subject to  rows x = rhs,  x >= 0
struct StandardFormLp {
  std::vector<RationalVector> rows;
  RationalVector rhs;
  RationalVector cost;  // empty means pure feasibility
};

struct StandardFormResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RationalVector x;
  /// When infeasible: y with y.A <= 0 componentwise and y.b > 0.
  RationalVector farkas;
};

StandardFormResult solve_standard_form(const StandardFormLp& lp);

}  // namespace lfpoly::geometry
