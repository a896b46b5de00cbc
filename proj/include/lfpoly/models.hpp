#pragma once

// Model types shared by the polytope and LHV code.

#include <map>
#include <vector>

#include "lfpoly/behaviour.hpp"
#include "lfpoly/rational.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly {

/// Finite mixture of deterministic strategies.
struct LhvModel {
  RationalVector weights;
  std::vector<Strategy> strategies;
};

/// responses[lambda][party][setting] is a distribution over that setting's outcomes.
struct StochasticLhvModel {
  RationalVector weights;
  std::vector<std::vector<std::vector<RationalVector>>> responses;
};

/// Sparse distribution over full assignments (one outcome per party and
/// setting). Keys are party-major flattenings of a Strategy.
struct JointDistribution {
  std::vector<std::vector<int>> shape;  // outcome counts per party per setting
  std::map<std::vector<int>, Rational> probabilities;
};

std::vector<int> flatten(const Strategy& strategy);
Strategy unflatten(const std::vector<std::vector<int>>& shape, const std::vector<int>& flat);

/// One friend-outcome string c with weight P(c) and a no-signalling
/// conditional on the restricted public scenario.
struct LfBranch {
  std::vector<int> friend_outcomes;  // c_i for each friend, in friend order
  Rational weight;
  Behaviour conditional;
};

struct LfModel {
  Scenario scenario;
  std::vector<LfBranch> branches;
};

}  // namespace lfpoly
