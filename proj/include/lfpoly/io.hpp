#pragma once

// JSON formats. Rationals are "num/den" strings; parties, settings, outcomes
// and friend indices are 1-based in every file.

#include <json.hpp>

#include <string>
#include <vector>

#include "lfpoly/behaviour.hpp"
#include "lfpoly/geometry.hpp"
#include "lfpoly/inequality.hpp"
#include "lfpoly/lhv.hpp"
#include "lfpoly/models.hpp"
#include "lfpoly/polytopes.hpp"
#include "lfpoly/quantum.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly::io {

using Json = nlohmann::json;

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& value);

Json rational_array(std::span<const Rational> values);
RationalVector parse_rational_array(const Json& value);

ScenarioSpec scenario_spec_from_json(const Json& value);
Scenario scenario_from_json(const Json& value);
Json to_json(const Scenario& s);

/// Accepts {"scenario": ..., "entries": [...]}; `fallback` is used when the
/// file carries no scenario.
Behaviour behaviour_from_json(const Json& value, const Scenario* fallback = nullptr);
Json to_json(const Behaviour& b);

Json to_json(const geometry::VRep& v);
geometry::VRep vrep_from_json(const Json& value);

Json to_json(const Inequality& ineq);
Inequality inequality_from_json(const Json& value);
/// One inequality per line: coefficients, then "<= bound".
std::string inequality_lines(const std::vector<Inequality>& list);

Json to_json(const LhvModel& m);
LhvModel lhv_model_from_json(const Json& value);

Json to_json(const StochasticLhvModel& m);
StochasticLhvModel stochastic_model_from_json(const Json& value);

Json to_json(const LfModel& m);
LfModel lf_model_from_json(const Json& value);

Json to_json(const BellMembership& m);
Json to_json(const LfMembership& m);
Json to_json(const NsMembership& m);

/// Re-verifies a membership certificate written by to_json against b by
/// direct arithmetic only (no LP). "set" is bell, lf, ns, or lhv for an
/// extracted deterministic model.
bool check_certificate(const Json& certificate, const Behaviour& b);

Json to_json(const quantum::QuantumModel& q);
quantum::QuantumModel quantum_model_from_json(const Json& value);
Json to_json(const quantum::FloatBehaviour& t);

}  // namespace lfpoly::io
