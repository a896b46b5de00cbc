#include "lfpoly/linalg.hpp"

#include <utility>

namespace lfpoly::linalg {

RowEchelon reduced_row_echelon(std::vector<RationalVector> rows, std::size_t columns) {
  RowEchelon out;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < columns && lead < rows.size(); ++col) {
    std::size_t pick = lead;
    while (pick < rows.size() && sgn(rows[pick][col]) == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[lead], rows[pick]);
    auto& pivot_row = rows[lead];
    const Rational inv = 1 / pivot_row[col];
    for (std::size_t j = col; j < columns; ++j) {
      if (sgn(pivot_row[j]) != 0) pivot_row[j] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == lead || sgn(rows[i][col]) == 0) continue;
      const Rational factor = rows[i][col];
      for (std::size_t j = col; j < columns; ++j) {
        if (sgn(pivot_row[j]) != 0) rows[i][j] -= factor * pivot_row[j];
      }
    }
    out.pivots.push_back(col);
    ++lead;
  }
  rows.resize(lead);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const std::vector<RationalVector>& rows, std::size_t columns) {
  return reduced_row_echelon(rows, columns).rank();
}

bool invert(std::vector<RationalVector> matrix, std::vector<RationalVector>& inverse) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    matrix[i].resize(2 * n);
    for (std::size_t j = 0; j < n; ++j) matrix[i][n + j] = (i == j) ? 1 : 0;
  }
  auto echelon = reduced_row_echelon(std::move(matrix), 2 * n);
  if (echelon.rank() < n || echelon.pivots[n - 1] != n - 1) return false;
  inverse.assign(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inverse[i][j] = echelon.rows[i][n + j];
  }
  return true;
}

}  // namespace lfpoly::linalg
