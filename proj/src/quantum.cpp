#include "lfpoly/quantum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "lfpoly/error.hpp"

namespace lfpoly::quantum {

namespace {

bool hermitian(const Matrix& m, double tol) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol; }

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

void check_shape(const QuantumModel& q, const Scenario& s) {
  if (q.dimensions.size() != s.parties() || q.povms.size() != s.parties()) {
    throw Error(ErrorKind::ShapeMismatch, "quantum model has a different number of parties");
  }
  for (std::size_t i = 0; i < s.parties(); ++i) {
    if (q.povms[i].size() != static_cast<std::size_t>(s.settings(i))) {
      throw Error(ErrorKind::ShapeMismatch, "party " + std::to_string(i + 1) + " has the wrong number of settings");
    }
    for (int x = 0; x < s.settings(i); ++x) {
      if (q.povms[i][static_cast<std::size_t>(x)].size() != static_cast<std::size_t>(s.outcomes(i, x))) {
        throw Error(ErrorKind::ShapeMismatch, "party " + std::to_string(i + 1) + ", setting " +
                                                  std::to_string(x + 1) + " has the wrong number of outcomes");
      }
    }
  }
}

}  // namespace

void validate(const QuantumModel& q, double tolerance) {
  Eigen::Index total = 1;
  for (int d : q.dimensions) {
    if (d < 1) throw Error(ErrorKind::ShapeMismatch, "local dimension must be positive");
    total *= d;
  }
  if (q.state.rows() != total || q.state.cols() != total) {
    throw Error(ErrorKind::ShapeMismatch, "state is " + std::to_string(q.state.rows()) + "x" +
                                              std::to_string(q.state.cols()) + ", expected " +
                                              std::to_string(total));
  }
  if (!hermitian(q.state, tolerance)) throw Error(ErrorKind::NotAState, "state is not Hermitian");
  const auto trace = q.state.trace();
  if (std::abs(trace - std::complex<double>(1.0, 0.0)) > tolerance) {
    throw Error(ErrorKind::NotAState, "state trace differs from 1");
  }
  if (min_eigenvalue(q.state) < -tolerance) throw Error(ErrorKind::NotAState, "state has a negative eigenvalue");
  if (q.povms.size() != q.dimensions.size()) throw Error(ErrorKind::ShapeMismatch, "one POVM list per party");

  for (std::size_t i = 0; i < q.povms.size(); ++i) {
    const int d = q.dimensions[i];
    for (std::size_t x = 0; x < q.povms[i].size(); ++x) {
      const std::string where = "party " + std::to_string(i + 1) + ", setting " + std::to_string(x + 1);
      Matrix sum = Matrix::Zero(d, d);
      for (const auto& e : q.povms[i][x]) {
        if (e.rows() != d || e.cols() != d) throw Error(ErrorKind::ShapeMismatch, where + ": element size");
        if (!hermitian(e, tolerance)) throw Error(ErrorKind::NotAPovm, where + ": element not Hermitian");
        if (min_eigenvalue(e) < -tolerance) throw Error(ErrorKind::NotAPovm, where + ": element not positive");
        sum += e;
      }
      if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tolerance) {
        throw Error(ErrorKind::NotAPovm, where + ": elements do not sum to the identity");
      }
    }
  }
}

FloatBehaviour born_behaviour(const QuantumModel& q, const Scenario& s, double tolerance) {
  check_shape(q, s);
  validate(q, tolerance);
  const Layout layout(s);
  FloatBehaviour out{s, std::vector<double>(layout.dimension())};
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    const auto& x = layout.context(k);
    double total = 0;
    for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
      const auto a = layout.outcomes_at(k, local);
      Matrix op = q.povms[0][static_cast<std::size_t>(x[0])][static_cast<std::size_t>(a[0])];
      for (std::size_t i = 1; i < a.size(); ++i) {
        op = kron(op, q.povms[i][static_cast<std::size_t>(x[i])][static_cast<std::size_t>(a[i])]);
      }
      double p = (op * q.state).trace().real();
      if (p < -tolerance || p > 1 + tolerance) {
        throw Error(ErrorKind::NormalizationDrift, "probability " + std::to_string(p) + " outside [0, 1]");
      }
      p = std::clamp(p, 0.0, 1.0);
      out.entries[layout.offset(k) + local] = p;
      total += p;
    }
    if (std::abs(total - 1) >= tolerance) {
      throw Error(ErrorKind::NormalizationDrift, "context sums to " + std::to_string(total));
    }
    for (std::size_t j = layout.offset(k); j < layout.offset(k + 1); ++j) out.entries[j] /= total;
  }
  return out;
}

Rational nearest_fraction(const Rational& value, const Integer& max_denominator) {
  if (max_denominator < 1) throw Error(ErrorKind::ParseError, "denominator budget must be positive");
  if (value.get_den() <= max_denominator) return value;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = value.get_num();
  Integer d = value.get_den();
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    const Integer q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer r = n - a * d;
    n = d;
    d = r;
  }
  Integer k;
  const Integer room = max_denominator - q0;
  mpz_fdiv_q(k.get_mpz_t(), room.get_mpz_t(), q1.get_mpz_t());
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  return abs(bound2 - value) <= abs(bound1 - value) ? bound2 : bound1;
}

Behaviour rationalize(const FloatBehaviour& t, long max_denominator, double tolerance) {
  const Layout layout(t.scenario);
  if (t.entries.size() != layout.dimension()) throw Error(ErrorKind::DimensionMismatch, "float table length");
  const Integer budget(max_denominator);
  RationalVector entries(t.entries.size());
  for (std::size_t j = 0; j < entries.size(); ++j) {
    double v = t.entries[j];
    if (!std::isfinite(v) || v < -tolerance) {
      throw Error(ErrorKind::NegativeAfterRounding, "entry " + std::to_string(j) + " is " + std::to_string(v));
    }
    v = std::max(v, 0.0);
    entries[j] = nearest_fraction(Rational(v), budget);
  }
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    Rational total = 0;
    std::size_t largest = layout.offset(k);
    for (std::size_t j = layout.offset(k); j < layout.offset(k + 1); ++j) {
      total += entries[j];
      if (entries[j] > entries[largest]) largest = j;
    }
    entries[largest] += 1 - total;
    if (sgn(entries[largest]) < 0) {
      throw Error(ErrorKind::NegativeAfterRounding, "normalization residual made an entry negative");
    }
  }
  return Behaviour(t.scenario, std::move(entries));
}

double evaluate(const Inequality& ineq, std::span<const double> point) {
  if (point.size() != ineq.coefficients.size()) throw Error(ErrorKind::DimensionMismatch, "inequality length");
  double value = 0;
  for (std::size_t j = 0; j < point.size(); ++j) value += ineq.coefficients[j].get_d() * point[j];
  return value;
}

double signalling_deviation(const FloatBehaviour& t) {
  double worst = 0;
  for (const auto& row : ns_equalities(t.scenario)) {
    double v = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (sgn(row[j]) != 0) v += row[j].get_d() * t.entries[j];
    }
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

std::vector<Matrix> polarization_projectors(double theta) {
  Eigen::VectorXcd v(2), w(2);
  v << std::cos(theta), std::sin(theta);
  w << -std::sin(theta), std::cos(theta);
  return {pure_state(v), pure_state(w)};
}

Matrix pure_state(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

std::vector<Preset> preset_models() {
  using std::numbers::pi;
  const double r = 1 / std::sqrt(2.0);
  std::vector<Preset> out;

  // |Phi+> with the standard optimal CHSH angles.
  {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
    phi(0) = r;
    phi(3) = r;
    QuantumModel q;
    q.dimensions = {2, 2};
    q.state = pure_state(phi);
    q.povms = {{polarization_projectors(0), polarization_projectors(pi / 4)},
               {polarization_projectors(pi / 8), polarization_projectors(-pi / 8)}};
    validate(q);
    out.push_back({"tsirelson_chsh", Scenario::uniform({2, 2}, 2), std::move(q)});
  }

  // GHZ state measured in X and Y (Mermin settings).
  {
    Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
    ghz(0) = r;
    ghz(7) = r;
    const std::complex<double> i(0, 1);
    Eigen::VectorXcd xp(2), xm(2), yp(2), ym(2);
    xp << r, r;
    xm << r, -r;
    yp << r, i * r;
    ym << r, -i * r;
    const std::vector<std::vector<Matrix>> local = {{pure_state(xp), pure_state(xm)},
                                                    {pure_state(yp), pure_state(ym)}};
    QuantumModel q;
    q.dimensions = {2, 2, 2};
    q.state = pure_state(ghz);
    q.povms = {local, local, local};
    validate(q);
    out.push_back({"ghz_3party", Scenario::uniform({2, 2, 2}, 2), std::move(q)});
  }
  return out;
}

}  // namespace lfpoly::quantum
