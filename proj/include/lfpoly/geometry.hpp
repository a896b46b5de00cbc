#pragma once

// Exact-rational polyhedral geometry: a two-phase simplex with Farkas
// certificates, double-description conversions, affine dimension and
// convex-hull membership. Everything here works on plain coordinate vectors;
// the scenario-aware builders live in polytopes.hpp.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <utility>
#include <vector>

#include "lfpoly/rational.hpp"

namespace lfpoly::geometry {

/// coefficients . x (<= or ==) bound
struct LinearConstraint {
  RationalVector coefficients;
  Rational bound;

  bool operator==(const LinearConstraint&) const = default;
};

class HRep {
 public:
  explicit HRep(std::size_t dimension = 0) : dimension_(dimension) {}

  void add_inequality(RationalVector coefficients, Rational bound);
  void add_equality(RationalVector coefficients, Rational bound);

  std::size_t dimension() const { return dimension_; }
  const std::vector<LinearConstraint>& inequalities() const { return inequalities_; }
  const std::vector<LinearConstraint>& equalities() const { return equalities_; }

  /// True iff the point satisfies every constraint exactly.
  bool contains(std::span<const Rational> point) const;

 private:
  std::size_t dimension_;
  std::vector<LinearConstraint> inequalities_;
  std::vector<LinearConstraint> equalities_;
};

/// Finite point list, deduplicated under exact equality. Insertion order of
/// first occurrences is kept.
class VRep {
 public:
  explicit VRep(std::size_t dimension = 0) : dimension_(dimension) {}
  VRep(std::size_t dimension, std::vector<RationalVector> points);

  /// Returns false if the point was already present.
  bool add(RationalVector point);
  bool contains(std::span<const Rational> point) const;

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<RationalVector>& points() const& { return points_; }
  std::vector<RationalVector> points() && { return std::move(points_); }
  const RationalVector& operator[](std::size_t i) const { return points_[i]; }

  /// Same point set irrespective of order.
  bool same_points(const VRep& other) const;

 private:
  std::size_t dimension_;
  std::vector<RationalVector> points_;
  std::vector<std::size_t> sorted_;  // indices into points_, lexicographic order
};

enum class Sense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Nonnegative multipliers on the inequalities and free multipliers on the
/// equalities whose combination reads 0 . x <= -1.
struct FarkasWitness {
  RationalVector inequality_multipliers;
  RationalVector equality_multipliers;
};

struct FeasiblePoint {
  RationalVector point;
};

using LpCertificate = std::variant<FeasiblePoint, FarkasWitness>;

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;               // meaningful when Optimal
  std::optional<LpCertificate> certificate;  // point when Optimal/Unbounded, witness when Infeasible
};

LpResult lp_solve(const HRep& h, std::span<const Rational> objective, Sense sense);

/// Direct arithmetic check of a Farkas witness against `h`.
bool verify_farkas(const HRep& h, const FarkasWitness& witness);

/// Dimension of the affine hull. Throws EmptyInput on an empty list.
std::size_t affine_dimension(const VRep& v);
std::size_t affine_dimension(const std::vector<RationalVector>& points);

struct DdOptions {
  /// Intermediate ray budget; exceeding it throws ScenarioTooLarge.
  std::size_t max_rays = 200000;
};

/// Vertices of a bounded polyhedron, sorted lexicographically.
VRep dd_h_to_v(const HRep& h, const DdOptions& options = {});

/// Facets (integer, gcd 1) and affine-hull equalities (integer, gcd 1, first
/// nonzero coefficient positive) of conv(v). Facet coefficients vanish outside
/// the pivot coordinates of the affine hull, which makes the representation
/// canonical for a given affine hull. Facets are sorted lexicographically.
HRep dd_v_to_h(const VRep& v, const DdOptions& options = {});

struct HullMembership {
  bool member = false;
  RationalVector weights;                    // convex weights when member
  std::optional<LinearConstraint> separator;  // valid on the hull, violated by the point
};

HullMembership in_convex_hull(std::span<const Rational> point, const VRep& v);

/// Recomputes the weighted sum, or evaluates the separator on every point.
bool verify_hull_certificate(std::span<const Rational> point, const VRep& v,
                             const HullMembership& membership);

/// Every point of each list lies in the hull of the other.
bool hull_equal(const VRep& lhs, const VRep& rhs);

/// First point of `inner` outside hull(outer), if any.
std::optional<std::size_t> first_point_outside(const VRep& inner, const VRep& outer);

}  // namespace lfpoly::geometry
