#pragma once

// Born-rule behaviours in double precision, and the single crossing point
// into exact arithmetic (rationalize).

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

#include "lfpoly/behaviour.hpp"
#include "lfpoly/inequality.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly::quantum {

using Matrix = Eigen::MatrixXcd;

struct QuantumModel {
  std::vector<int> dimensions;                            // local dimension per party
  Matrix state;                                           // density matrix on the tensor product
  std::vector<std::vector<std::vector<Matrix>>> povms;    // [party][setting][outcome]
};

inline constexpr double default_tolerance = 1e-9;

/// Throws ShapeMismatch, NotAState or NotAPovm.
void validate(const QuantumModel& q, double tolerance = default_tolerance);

/// Floating-point table in the shared layout.
struct FloatBehaviour {
  Scenario scenario;
  std::vector<double> entries;
};

/// tr[(M_a0|x0 (x) ... (x) M_aN|xN) rho]. Throws ShapeMismatch, NotAState,
/// NotAPovm or NormalizationDrift.
FloatBehaviour born_behaviour(const QuantumModel& q, const Scenario& s, double tolerance = default_tolerance);

/// Closest fraction with denominator at most max_denominator (continued fractions).
Rational nearest_fraction(const Rational& value, const Integer& max_denominator);

/// Rounds every entry, then puts each context's residual on its largest entry.
/// Throws NegativeAfterRounding.
Behaviour rationalize(const FloatBehaviour& t, long max_denominator, double tolerance = default_tolerance);

double evaluate(const Inequality& ineq, std::span<const double> point);

/// Largest violation of the no-signalling equalities.
double signalling_deviation(const FloatBehaviour& t);

struct Preset {
  std::string name;
  Scenario scenario;
  QuantumModel model;
};

/// tsirelson_chsh and ghz_3party.
std::vector<Preset> preset_models();

/// Projectors onto cos(theta)|0> + sin(theta)|1> (outcome 0) and its
/// orthogonal complement (outcome 1).
std::vector<Matrix> polarization_projectors(double theta);

/// |psi><psi| for a normalized vector.
Matrix pure_state(const Eigen::VectorXcd& psi);

}  // namespace lfpoly::quantum
