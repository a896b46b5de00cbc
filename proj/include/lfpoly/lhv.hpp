#pragma once

// Local hidden variable models: the constructive cycle stochastic model ->
// joint distribution -> deterministic model, and the conversion of an LF
// model into a deterministic LHV model when LF equals the Bell polytope.

#include <optional>
#include <utility>
#include <vector>

#include "lfpoly/behaviour.hpp"
#include "lfpoly/models.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly {

/// Weights nonnegative and summing to one, responses normalized. Throws BadWeights.
void check_model(const StochasticLhvModel& m);
void check_model(const LhvModel& m);

/// P(alpha) = sum_lambda P(lambda) prod_(i,s) P(alpha_(i,s) | s, lambda).
JointDistribution joint_from_stochastic(const StochasticLhvModel& m);

/// One hidden variable per assignment in the support.
LhvModel deterministic_from_joint(const JointDistribution& j);

/// Throws IncompatibleScenario when the model does not fit the scenario.
Behaviour behaviour_of(const LhvModel& m, const Scenario& s);
Behaviour behaviour_of(const StochasticLhvModel& m, const Scenario& s);

struct ModelCheck {
  bool ok = false;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> mismatch;  // first (x, a) that differs
};

ModelCheck verify_model(const LhvModel& m, const Behaviour& b);

/// Party playing the many-setting role in the product construction, or
/// nullopt if the scenario has neither supported shape.
std::optional<std::size_t> lhv_hub(const Scenario& s);

/// P(alpha | c) over strategies of the restricted public scenario:
///   prod_r P(alpha_hub[r], a_rest | r, c) / P(a_rest | c)^(R-1),
/// zero where the divisor vanishes. R is the hub's restricted setting count.
JointDistribution product_joint(const Scenario& s, const Behaviour& conditional);

/// Deterministic model reproducing the LF model's behaviour exactly.
/// Throws WrongScenarioShape or VerificationFailure.
LhvModel lf_to_lhv(const LfModel& model, const Scenario& s);

}  // namespace lfpoly
