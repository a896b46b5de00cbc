#include "lfpoly/simplex.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace lfpoly::geometry {

namespace {

// Dantzig pricing; switches to Bland's rule after a run of degenerate pivots
// so that termination is guaranteed.
constexpr int kBlandAfterDegenerate = 30;

class Tableau {
 public:
  Tableau(std::size_t width, std::vector<RationalVector> rows, RationalVector objective,
          std::vector<std::size_t> basis)
      : width_(width), rows_(std::move(rows)), objective_(std::move(objective)),
        basis_(std::move(basis)) {}

  // Minimizes over the columns flagged in `allowed`.
  LpStatus optimize(const std::vector<char>& allowed) {
    int degenerate = 0;
    for (;;) {
      const auto entering = choose_entering(allowed, degenerate > kBlandAfterDegenerate);
      if (!entering) return LpStatus::Optimal;
      const auto leaving = choose_leaving(*entering);
      if (!leaving) return LpStatus::Unbounded;
      degenerate = sgn(rows_[*leaving][width_]) == 0 ? degenerate + 1 : 0;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    auto& pivot_row = rows_[r];
    const Rational inv = 1 / pivot_row[q];
    nonzero_.clear();
    for (std::size_t j = 0; j <= width_; ++j) {
      if (sgn(pivot_row[j]) != 0) {
        pivot_row[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    auto eliminate = [&](RationalVector& row) {
      if (sgn(row[q]) == 0) return;
      const Rational factor = row[q];
      for (auto j : nonzero_) {
        scratch_ = factor * pivot_row[j];
        row[j] -= scratch_;
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(objective_);
    basis_[r] = q;
  }

  std::size_t width() const { return width_; }
  std::vector<RationalVector>& rows() { return rows_; }
  RationalVector& objective() { return objective_; }
  std::vector<std::size_t>& basis() { return basis_; }

 private:
  std::optional<std::size_t> choose_entering(const std::vector<char>& allowed, bool bland) const {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < width_; ++j) {
      if (!allowed[j] || sgn(objective_[j]) >= 0) continue;
      if (bland) return j;
      if (!best || objective_[j] < objective_[*best]) best = j;
    }
    return best;
  }

  std::optional<std::size_t> choose_leaving(std::size_t q) const {
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (sgn(rows_[i][q]) <= 0) continue;
      Rational ratio = rows_[i][width_] / rows_[i][q];
      if (!best || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*best])) {
        best = i;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  std::size_t width_;
  std::vector<RationalVector> rows_;  // width_ variable columns, then rhs
  RationalVector objective_;          // reduced costs, then minus the objective value
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
  Rational scratch_;
};

}  // namespace

StandardFormResult solve_standard_form(const StandardFormLp& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = m == 0 ? lp.cost.size() : lp.rows.front().size();
  RationalVector cost = lp.cost;
  cost.resize(n);

  StandardFormResult result;
  if (m == 0) {
    result.x.assign(n, 0);
    for (const auto& c : cost) {
      if (sgn(c) < 0) {
        result.status = LpStatus::Unbounded;
        return result;
      }
    }
    result.status = LpStatus::Optimal;
    result.value = 0;
    return result;
  }

  // Phase 1: artificial basis on sign-normalized rows.
  const std::size_t width = n + m;
  std::vector<int> sign(m, 1);
  std::vector<RationalVector> rows(m, RationalVector(width + 1));
  RationalVector objective(width + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(lp.rhs[i]) < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(lp.rows[i][j]) == 0) continue;
      rows[i][j] = sign[i] < 0 ? Rational(-lp.rows[i][j]) : lp.rows[i][j];
      objective[j] -= rows[i][j];
    }
    rows[i][n + i] = 1;
    rows[i][width] = sign[i] < 0 ? Rational(-lp.rhs[i]) : lp.rhs[i];
    objective[width] -= rows[i][width];
    basis[i] = n + i;
  }
  Tableau phase1(width, std::move(rows), std::move(objective), std::move(basis));
  phase1.optimize(std::vector<char>(width, 1));

  const Rational infeasibility = -phase1.objective()[width];
  if (sgn(infeasibility) > 0) {
    result.status = LpStatus::Infeasible;
    result.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      result.farkas[i] = 1 - phase1.objective()[n + i];
      if (sign[i] < 0) result.farkas[i] = -result.farkas[i];
    }
    return result;
  }

  // Drive artificial variables out of the basis; rows where that is impossible
  // are linearly dependent and get dropped.
  std::vector<char> keep(m, 1);
  for (std::size_t r = 0; r < m; ++r) {
    if (phase1.basis()[r] < n) continue;
    std::optional<std::size_t> column;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(phase1.rows()[r][j]) != 0) {
        column = j;
        break;
      }
    }
    if (column) {
      phase1.pivot(r, *column);
    } else {
      keep[r] = 0;
    }
  }

  std::vector<RationalVector> reduced;
  std::vector<std::size_t> reduced_basis;
  for (std::size_t r = 0; r < m; ++r) {
    if (!keep[r]) continue;
    auto& row = phase1.rows()[r];
    RationalVector compact(n + 1);
    for (std::size_t j = 0; j < n; ++j) compact[j] = std::move(row[j]);
    compact[n] = std::move(row[width]);
    reduced.push_back(std::move(compact));
    reduced_basis.push_back(phase1.basis()[r]);
  }

  RationalVector phase2_objective(n + 1);
  for (std::size_t j = 0; j < n; ++j) phase2_objective[j] = cost[j];
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const Rational& cb = cost[reduced_basis[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) {
      if (sgn(reduced[i][j]) != 0) phase2_objective[j] -= cb * reduced[i][j];
    }
  }
  Tableau phase2(n, std::move(reduced), std::move(phase2_objective), std::move(reduced_basis));
  const LpStatus status = phase2.optimize(std::vector<char>(n, 1));

  result.status = status;
  result.x.assign(n, 0);
  for (std::size_t i = 0; i < phase2.rows().size(); ++i) {
    result.x[phase2.basis()[i]] = phase2.rows()[i][n];
  }
  result.value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(cost[j]) != 0 && sgn(result.x[j]) != 0) result.value += cost[j] * result.x[j];
  }
  return result;
}

}  // namespace lfpoly::geometry
