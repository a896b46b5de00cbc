#pragma once

// Bell, no-signalling and LF polytopes of a scenario: vertex generation,
// membership with certificates, facets and dimension.

#include <cstddef>
#include <optional>
#include <vector>

#include "lfpoly/behaviour.hpp"
#include "lfpoly/geometry.hpp"
#include "lfpoly/inequality.hpp"
#include "lfpoly/models.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly {

struct SizeGuard {
  std::size_t max_enumeration_entries = 256;  // table length D for vertex/facet enumeration
  std::size_t max_membership_entries = 4096;  // table length D for membership LPs
  std::size_t max_rays = 200000;              // double description budget

  /// Defaults, overridden by LFPOLY_SIZE_GUARD="entries[,rays]".
  static SizeGuard from_environment();
};

geometry::VRep bell_vertices(const Scenario& s);

/// Positivity, normalization and no-signalling constraints.
geometry::HRep ns_hrep(const Scenario& s);

/// Throws ScenarioTooLarge past the guard.
geometry::VRep ns_vertices(const Scenario& s, const SizeGuard& guard = {});

/// All friend-outcome strings c (one query outcome per friend, friends in
/// increasing order), first friend most significant.
std::vector<std::vector<int>> friend_outcome_strings(const Scenario& s);

/// p(a|x) = [a_i = c_i for friends queried in x] * marginal of `conditional`
/// (a behaviour on the restricted public scenario) with the queried friends
/// summed out at their first remaining setting. Throws SignallingInput if the
/// conditional is signalling.
RationalVector lf_point(const Scenario& s, const std::vector<int>& c, const Behaviour& conditional);

/// Table reproduced by an LF model; throws on malformed models.
Behaviour lf_behaviour(const LfModel& model);

geometry::VRep lf_vertices(const Scenario& s, const SizeGuard& guard = {});

/// Product of the friends' query alphabets times |NS vertices of the restricted scenario|.
Integer lf_extreme_count(const Scenario& s, const SizeGuard& guard = {});

struct BellMembership {
  bool member = false;
  std::optional<LhvModel> model;
  std::optional<Inequality> separator;  // valid on every deterministic point, violated by b
};

BellMembership membership_bell(const Behaviour& b, const SizeGuard& guard = {});
bool verify_bell_certificate(const Behaviour& b, const BellMembership& m);

struct LfMembership {
  bool member = false;
  std::optional<LfModel> model;
  /// Row multipliers y of the LF decomposition system A z = r(b), z >= 0,
  /// with y.A <= 0 and y.r(b) > 0.
  RationalVector farkas;
  std::optional<Inequality> separator;  // valid on LF, violated by b
};

LfMembership membership_lf(const Behaviour& b, const SizeGuard& guard = {});

/// Weights, no-signalling of every conditional and exact reproduction.
bool verify_lf_model(const LfModel& model, const Behaviour& b);

/// Rebuilds the decomposition system of b's scenario and checks y directly.
bool verify_lf_farkas(const Behaviour& b, const RationalVector& y);

/// Separator read off the Farkas vector; valid on LF(s).
Inequality lf_separator(const Scenario& s, const RationalVector& y);

struct NsMembership {
  bool member = false;
  std::optional<SignallingWitness> witness;
};

NsMembership membership_ns(const Behaviour& b);

/// Facets of conv(v) in canonical integer form, sorted.
std::vector<Inequality> facets(const geometry::VRep& v, const SizeGuard& guard = {});

/// Facets of LF(s) that are not facets of B(s).
std::vector<Inequality> genuine_lf_inequalities(const Scenario& s, const SizeGuard& guard = {});

struct Dimensions {
  std::size_t bell = 0;
  std::size_t ns = 0;
  std::optional<std::size_t> lf;  // empty when LF vertices are past the guard
  bool lf_from_sandwich = false;  // lf inferred from dim B = dim NS, not from vertices
};

Dimensions polytope_dimensions(const Scenario& s, const SizeGuard& guard = {});

/// Common dimension; throws VerificationFailure if the three disagree.
std::size_t polytope_dimension(const Scenario& s, const SizeGuard& guard = {});

/// One-branch LF model of a deterministic strategy: friends' records are their
/// query outputs, the conditional plays the strategy on the remaining settings.
LfModel lf_model_of_strategy(const Scenario& s, const Strategy& strategy);

/// True iff every lifted point of NS(restricted) satisfies the normalization
/// and no-signalling equalities of s, decided on affine hulls by exact row
/// reduction. Together with positivity of the lift this proves LF within NS
/// without enumerating vertices.
bool lift_preserves_no_signalling(const Scenario& s);

/// Every PR box embedded on a pair of parties and a pair of settings each.
std::vector<Behaviour> embedded_pr_boxes(const Scenario& s);

}  // namespace lfpoly
