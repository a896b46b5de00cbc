#include "lfpoly/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "lfpoly/error.hpp"
#include "lfpoly/linalg.hpp"
#include "lfpoly/parallel.hpp"
#include "lfpoly/simplex.hpp"

namespace lfpoly::geometry {

namespace {

void require_dimension(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected dimension " +
                                                  std::to_string(expected) + ", got " +
                                                  std::to_string(actual));
  }
}

}  // namespace

void HRep::add_inequality(RationalVector coefficients, Rational bound) {
  require_dimension(dimension_, coefficients.size(), "inequality");
  inequalities_.push_back({std::move(coefficients), std::move(bound)});
}

void HRep::add_equality(RationalVector coefficients, Rational bound) {
  require_dimension(dimension_, coefficients.size(), "equality");
  equalities_.push_back({std::move(coefficients), std::move(bound)});
}

bool HRep::contains(std::span<const Rational> point) const {
  require_dimension(dimension_, point.size(), "point");
  for (const auto& c : inequalities_) {
    if (dot(c.coefficients, point) > c.bound) return false;
  }
  for (const auto& c : equalities_) {
    if (dot(c.coefficients, point) != c.bound) return false;
  }
  return true;
}

VRep::VRep(std::size_t dimension, std::vector<RationalVector> points) : dimension_(dimension) {
  for (auto& p : points) add(std::move(p));
}

bool VRep::add(RationalVector point) {
  require_dimension(dimension_, point.size(), "vertex");
  auto less = [this](std::size_t idx, const RationalVector& p) { return lex_less(points_[idx], p); };
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), point, less);
  if (it != sorted_.end() && points_[*it] == point) return false;
  sorted_.insert(it, points_.size());
  points_.push_back(std::move(point));
  return true;
}

bool VRep::contains(std::span<const Rational> point) const {
  if (point.size() != dimension_) return false;
  auto less = [this](std::size_t idx, std::span<const Rational> p) { return lex_less(points_[idx], p); };
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), point, less);
  return it != sorted_.end() && std::equal(point.begin(), point.end(), points_[*it].begin());
}

bool VRep::same_points(const VRep& other) const {
  if (dimension_ != other.dimension_ || points_.size() != other.points_.size()) return false;
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    if (points_[sorted_[i]] != other.points_[other.sorted_[i]]) return false;
  }
  return true;
}

LpResult lp_solve(const HRep& h, std::span<const Rational> objective, Sense sense) {
  const std::size_t d = h.dimension();
  require_dimension(d, objective.size(), "objective");
  const auto& ineqs = h.inequalities();
  const auto& eqs = h.equalities();
  const std::size_t k = ineqs.size();

  // v = v+ - v-, one slack per inequality.
  StandardFormLp lp;
  const std::size_t width = 2 * d + k;
  for (std::size_t i = 0; i < k; ++i) {
    RationalVector row(width);
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = ineqs[i].coefficients[j];
      row[d + j] = -ineqs[i].coefficients[j];
    }
    row[2 * d + i] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(ineqs[i].bound);
  }
  for (const auto& e : eqs) {
    RationalVector row(width);
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = e.coefficients[j];
      row[d + j] = -e.coefficients[j];
    }
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(e.bound);
  }
  lp.cost.assign(width, 0);
  for (std::size_t j = 0; j < d; ++j) {
    const Rational c = sense == Sense::Minimize ? objective[j] : Rational(-objective[j]);
    lp.cost[j] = c;
    lp.cost[d + j] = -c;
  }

  const auto solved = solve_standard_form(lp);
  LpResult result;
  result.status = solved.status;
  if (solved.status == LpStatus::Infeasible) {
    const Rational scale = dot(solved.farkas, lp.rhs);
    FarkasWitness witness;
    for (std::size_t i = 0; i < k; ++i) witness.inequality_multipliers.push_back(-solved.farkas[i] / scale);
    for (std::size_t j = 0; j < eqs.size(); ++j) {
      witness.equality_multipliers.push_back(-solved.farkas[k + j] / scale);
    }
    result.certificate = witness;
    return result;
  }
  RationalVector point(d);
  for (std::size_t j = 0; j < d; ++j) point[j] = solved.x[j] - solved.x[d + j];
  result.value = dot(objective, point);
  result.certificate = FeasiblePoint{std::move(point)};
  return result;
}

bool verify_farkas(const HRep& h, const FarkasWitness& witness) {
  const auto& ineqs = h.inequalities();
  const auto& eqs = h.equalities();
  if (witness.inequality_multipliers.size() != ineqs.size() ||
      witness.equality_multipliers.size() != eqs.size()) {
    return false;
  }
  RationalVector combination(h.dimension());
  Rational bound = 0;
  auto accumulate = [&](const LinearConstraint& c, const Rational& weight) {
    if (sgn(weight) == 0) return;
    for (std::size_t j = 0; j < combination.size(); ++j) combination[j] += weight * c.coefficients[j];
    bound += weight * c.bound;
  };
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (sgn(witness.inequality_multipliers[i]) < 0) return false;
    accumulate(ineqs[i], witness.inequality_multipliers[i]);
  }
  for (std::size_t i = 0; i < eqs.size(); ++i) accumulate(eqs[i], witness.equality_multipliers[i]);
  return std::all_of(combination.begin(), combination.end(), [](const Rational& v) { return sgn(v) == 0; }) &&
         sgn(bound) < 0;
}

std::size_t affine_dimension(const std::vector<RationalVector>& points) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "affine dimension of an empty point list");
  const auto& origin = points.front();
  std::vector<RationalVector> differences;
  differences.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    RationalVector diff(origin.size());
    for (std::size_t j = 0; j < origin.size(); ++j) diff[j] = points[i][j] - origin[j];
    differences.push_back(std::move(diff));
  }
  return linalg::rank(differences, origin.size());
}

std::size_t affine_dimension(const VRep& v) { return affine_dimension(v.points()); }

HullMembership in_convex_hull(std::span<const Rational> point, const VRep& v) {
  const std::size_t d = v.dimension();
  require_dimension(d, point.size(), "hull membership");
  const std::size_t n = v.size();

  StandardFormLp lp;
  lp.rows.assign(d + 1, RationalVector(n));
  lp.rhs.assign(point.begin(), point.end());
  lp.rhs.push_back(1);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < d; ++j) lp.rows[j][k] = v[k][j];
    lp.rows[d][k] = 1;
  }
  const auto solved = solve_standard_form(lp);

  HullMembership out;
  if (solved.status != LpStatus::Infeasible) {
    out.member = true;
    out.weights = solved.x;
    return out;
  }
  // y.(v_k, 1) <= 0 for every k and y.(p, 1) > 0: y[0..d) . x <= -y[d] separates.
  RationalVector raw(solved.farkas.begin(), solved.farkas.end());
  raw.back() = -raw.back();
  const auto integral = primitive_integer_vector(raw);
  LinearConstraint separator;
  for (std::size_t j = 0; j < d; ++j) separator.coefficients.emplace_back(integral[j]);
  separator.bound = Rational(integral[d]);
  out.separator = std::move(separator);
  return out;
}

bool verify_hull_certificate(std::span<const Rational> point, const VRep& v,
                             const HullMembership& membership) {
  if (point.size() != v.dimension()) return false;
  if (membership.member) {
    if (membership.weights.size() != v.size()) return false;
    Rational total = 0;
    RationalVector combination(v.dimension());
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto& w = membership.weights[k];
      if (sgn(w) < 0) return false;
      if (sgn(w) == 0) continue;
      total += w;
      for (std::size_t j = 0; j < combination.size(); ++j) combination[j] += w * v[k][j];
    }
    return total == 1 && std::equal(combination.begin(), combination.end(), point.begin());
  }
  if (!membership.separator) return false;
  const auto& sep = *membership.separator;
  if (sep.coefficients.size() != v.dimension()) return false;
  for (const auto& p : v.points()) {
    if (dot(sep.coefficients, p) > sep.bound) return false;
  }
  return dot(sep.coefficients, point) > sep.bound;
}

std::optional<std::size_t> first_point_outside(const VRep& inner, const VRep& outer) {
  require_dimension(outer.dimension(), inner.dimension(), "hull comparison");
  const std::size_t n = inner.size();
  std::atomic<std::size_t> first{n};
  parallel_for(n, [&](std::size_t i) {
    if (i > first.load()) return;
    if (outer.contains(inner[i])) return;
    if (!in_convex_hull(inner[i], outer).member) {
      std::size_t current = first.load();
      while (i < current && !first.compare_exchange_weak(current, i)) {
      }
    }
  });
  if (first.load() == n) return std::nullopt;
  return first.load();
}

bool hull_equal(const VRep& lhs, const VRep& rhs) {
  require_dimension(lhs.dimension(), rhs.dimension(), "hull comparison");
  return !first_point_outside(lhs, rhs) && !first_point_outside(rhs, lhs);
}

}  // namespace lfpoly::geometry
