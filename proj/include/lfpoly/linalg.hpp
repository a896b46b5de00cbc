#pragma once

#include <cstddef>
#include <vector>

#include "lfpoly/rational.hpp"

namespace lfpoly::linalg {

/// Reduced row echelon form over the rationals. `rows` holds only the nonzero
/// rows; `pivots[k]` is the pivot column of `rows[k]`, strictly increasing.
struct RowEchelon {
  std::vector<RationalVector> rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return rows.size(); }
};

RowEchelon reduced_row_echelon(std::vector<RationalVector> rows, std::size_t columns);

std::size_t rank(const std::vector<RationalVector>& rows, std::size_t columns);

/// Inverse of a square nonsingular matrix; returns false if singular.
bool invert(std::vector<RationalVector> matrix, std::vector<RationalVector>& inverse);

}  // namespace lfpoly::linalg
