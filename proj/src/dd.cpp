// Double description method (Motzkin et al.) on integer cones
// { z : rows . z >= 0 }, with the combinatorial adjacency test.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "lfpoly/error.hpp"
#include "lfpoly/geometry.hpp"
#include "lfpoly/linalg.hpp"

namespace lfpoly::geometry {

namespace {

using Bits = std::vector<std::uint64_t>;

struct Ray {
  IntegerVector z;
  Bits zeros;  // processed rows with rows[k] . z == 0
};

void set_bit(Bits& bits, std::size_t k) { bits[k / 64] |= std::uint64_t{1} << (k % 64); }

std::size_t popcount(const Bits& bits) {
  std::size_t total = 0;
  for (auto word : bits) total += static_cast<std::size_t>(std::popcount(word));
  return total;
}

bool is_subset(const Bits& sub, const Bits& super) {
  for (std::size_t w = 0; w < sub.size(); ++w) {
    if (sub[w] & ~super[w]) return false;
  }
  return true;
}

Integer row_dot(const IntegerVector& row, const IntegerVector& z) {
  Integer sum = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (sgn(row[j]) != 0 && sgn(z[j]) != 0) sum += row[j] * z[j];
  }
  return sum;
}

void make_primitive(IntegerVector& z) {
  Integer g = 0;
  for (const auto& v : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1) {
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

IntegerVector to_integer_row(std::span<const Rational> row) { return primitive_integer_vector(row); }

// Extreme rays of the pointed cone { z in R^dim : rows[k] . z >= 0 }.
std::vector<IntegerVector> extreme_rays(const std::vector<IntegerVector>& rows, std::size_t dim,
                                        std::size_t max_rays) {
  const std::size_t words = (rows.size() + 63) / 64;

  // Initial simplicial cone from the first dim independent rows.
  std::vector<std::size_t> chosen;
  std::vector<RationalVector> echelon;
  std::vector<std::size_t> echelon_pivot;
  for (std::size_t k = 0; k < rows.size() && chosen.size() < dim; ++k) {
    RationalVector r(rows[k].begin(), rows[k].end());
    for (std::size_t b = 0; b < echelon.size(); ++b) {
      const Rational factor = r[echelon_pivot[b]];
      if (sgn(factor) == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (sgn(echelon[b][j]) != 0) r[j] -= factor * echelon[b][j];
      }
    }
    auto lead = std::find_if(r.begin(), r.end(), [](const Rational& v) { return sgn(v) != 0; });
    if (lead == r.end()) continue;
    const std::size_t p = static_cast<std::size_t>(lead - r.begin());
    const Rational inv = 1 / r[p];
    for (auto& v : r) v *= inv;
    echelon.push_back(std::move(r));
    echelon_pivot.push_back(p);
    chosen.push_back(k);
  }
  if (chosen.size() < dim) {
    throw Error(ErrorKind::UnboundedInput, "constraint system has a nontrivial lineality space");
  }

  std::vector<RationalVector> basis_rows;
  for (auto k : chosen) basis_rows.emplace_back(rows[k].begin(), rows[k].end());
  std::vector<RationalVector> inverse;
  linalg::invert(basis_rows, inverse);

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    RationalVector column(dim);
    for (std::size_t i = 0; i < dim; ++i) column[i] = inverse[i][j];
    Ray ray{to_integer_row(column), Bits(words, 0)};
    for (std::size_t i = 0; i < dim; ++i) {
      if (i != j) set_bit(ray.zeros, chosen[i]);
    }
    rays.push_back(std::move(ray));
  }

  std::vector<char> processed(rows.size(), 0);
  for (auto k : chosen) processed[k] = 1;

  const std::size_t adjacency_floor = dim >= 2 ? dim - 2 : 0;
  std::vector<Integer> values;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (processed[k]) continue;
    processed[k] = 1;
    const auto& row = rows[k];
    values.resize(rays.size());
    std::vector<std::size_t> positive, negative;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      values[r] = row_dot(row, rays[r].z);
      const int s = sgn(values[r]);
      if (s > 0) positive.push_back(r);
      else if (s < 0) negative.push_back(r);
    }

    std::vector<Ray> next;
    next.reserve(rays.size());
    if (!negative.empty()) {
      for (auto p : positive) {
        for (auto n : negative) {
          Bits common(words);
          for (std::size_t w = 0; w < words; ++w) common[w] = rays[p].zeros[w] & rays[n].zeros[w];
          if (popcount(common) < adjacency_floor) continue;
          bool adjacent = true;
          for (std::size_t r = 0; r < rays.size(); ++r) {
            if (r == p || r == n) continue;
            if (is_subset(common, rays[r].zeros)) {
              adjacent = false;
              break;
            }
          }
          if (!adjacent) continue;
          Ray fresh{IntegerVector(dim), std::move(common)};
          for (std::size_t j = 0; j < dim; ++j) {
            fresh.z[j] = values[p] * rays[n].z[j] - values[n] * rays[p].z[j];
          }
          make_primitive(fresh.z);
          set_bit(fresh.zeros, k);
          next.push_back(std::move(fresh));
        }
      }
    }
    std::vector<Ray> kept;
    kept.reserve(rays.size() - negative.size() + next.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      const int s = sgn(values[r]);
      if (s < 0) continue;
      if (s == 0) set_bit(rays[r].zeros, k);
      kept.push_back(std::move(rays[r]));
    }
    for (auto& ray : next) kept.push_back(std::move(ray));
    rays = std::move(kept);
    if (rays.size() > max_rays) {
      throw Error(ErrorKind::ScenarioTooLarge,
                  "double description exceeded " + std::to_string(max_rays) + " intermediate rays");
    }
  }

  std::vector<IntegerVector> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.z));
  return out;
}

}  // namespace

VRep dd_h_to_v(const HRep& h, const DdOptions& options) {
  const std::size_t n = h.dimension();

  // Parametrize the affine subspace cut out by the equalities: x = x0 + N y.
  std::vector<RationalVector> augmented;
  for (const auto& e : h.equalities()) {
    RationalVector row = e.coefficients;
    row.push_back(e.bound);
    augmented.push_back(std::move(row));
  }
  const auto echelon = linalg::reduced_row_echelon(std::move(augmented), n + 1);
  if (!echelon.pivots.empty() && echelon.pivots.back() == n) {
    throw Error(ErrorKind::EmptyPolytope, "inconsistent equalities");
  }
  std::vector<char> is_pivot(n, 0);
  for (auto p : echelon.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free_columns;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free_columns.push_back(j);
  }
  const std::size_t k = free_columns.size();
  RationalVector origin(n);
  for (std::size_t r = 0; r < echelon.rank(); ++r) origin[echelon.pivots[r]] = echelon.rows[r][n];
  std::vector<RationalVector> directions(k, RationalVector(n));
  for (std::size_t f = 0; f < k; ++f) {
    directions[f][free_columns[f]] = 1;
    for (std::size_t r = 0; r < echelon.rank(); ++r) {
      directions[f][echelon.pivots[r]] = -echelon.rows[r][free_columns[f]];
    }
  }

  // Homogenized cone in (t, y): t >= 0 and t (b - a.x0) - (a N) y >= 0.
  std::vector<IntegerVector> rows;
  RationalVector t_row(k + 1);
  t_row[0] = 1;
  rows.push_back(to_integer_row(t_row));
  for (const auto& ineq : h.inequalities()) {
    RationalVector row(k + 1);
    row[0] = ineq.bound - dot(ineq.coefficients, origin);
    for (std::size_t f = 0; f < k; ++f) row[f + 1] = -dot(ineq.coefficients, directions[f]);
    if (std::all_of(row.begin(), row.end(), [](const Rational& v) { return sgn(v) == 0; })) continue;
    rows.push_back(to_integer_row(row));
  }

  VRep out(n);
  std::vector<RationalVector> vertices;
  if (k == 0) {
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (sgn(rows[r][0]) < 0) throw Error(ErrorKind::EmptyPolytope, "no feasible point");
    }
    vertices.push_back(origin);
  } else {
    const auto rays = extreme_rays(rows, k + 1, options.max_rays);
    for (const auto& z : rays) {
      if (sgn(z[0]) == 0) throw Error(ErrorKind::UnboundedInput, "polyhedron has a recession direction");
      RationalVector x = origin;
      for (std::size_t f = 0; f < k; ++f) {
        if (sgn(z[f + 1]) == 0) continue;
        const Rational coeff(z[f + 1], z[0]);
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(directions[f][j]) != 0) x[j] += coeff * directions[f][j];
        }
      }
      for (auto& v : x) v.canonicalize();
      vertices.push_back(std::move(x));
    }
    if (vertices.empty()) throw Error(ErrorKind::EmptyPolytope, "no feasible point");
  }
  sort_unique(vertices);
  for (auto& v : vertices) out.add(std::move(v));
  return out;
}

HRep dd_v_to_h(const VRep& v, const DdOptions& options) {
  if (v.empty()) throw Error(ErrorKind::EmptyInput, "facets of an empty point list");
  const std::size_t n = v.dimension();
  const auto& origin = v[0];

  std::vector<RationalVector> differences;
  for (std::size_t i = 1; i < v.size(); ++i) {
    RationalVector diff(n);
    for (std::size_t j = 0; j < n; ++j) diff[j] = v[i][j] - origin[j];
    differences.push_back(std::move(diff));
  }
  const auto echelon = linalg::reduced_row_echelon(std::move(differences), n);
  const std::size_t r = echelon.rank();
  std::vector<char> is_pivot(n, 0);
  for (auto p : echelon.pivots) is_pivot[p] = 1;

  HRep out(n);
  // One equality per non-pivot coordinate: x_j - sum_k R[k][j] x_{p_k} = const.
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    RationalVector coefficients(n);
    coefficients[j] = 1;
    for (std::size_t row = 0; row < r; ++row) coefficients[echelon.pivots[row]] = -echelon.rows[row][j];
    RationalVector with_bound = coefficients;
    with_bound.push_back(dot(coefficients, origin));
    auto integral = primitive_integer_vector(with_bound);
    auto lead = std::find_if(integral.begin(), integral.end(), [](const Integer& x) { return sgn(x) != 0; });
    if (lead != integral.end() && sgn(*lead) < 0) {
      for (auto& x : integral) x = -x;
    }
    RationalVector lhs(n);
    for (std::size_t c = 0; c < n; ++c) lhs[c] = Rational(integral[c]);
    out.add_equality(std::move(lhs), Rational(integral[n]));
  }
  if (r == 0) return out;

  // Facets a.y <= beta of the projection onto the pivot coordinates are the
  // extreme rays of { (beta, a) : beta - a.y_k >= 0 for every point }.
  std::vector<IntegerVector> rows;
  for (const auto& p : v.points()) {
    RationalVector row(r + 1);
    row[0] = 1;
    for (std::size_t c = 0; c < r; ++c) row[c + 1] = -p[echelon.pivots[c]];
    rows.push_back(to_integer_row(row));
  }
  const auto rays = extreme_rays(rows, r + 1, options.max_rays);

  std::vector<RationalVector> facets;
  for (const auto& z : rays) {
    RationalVector facet(n + 1);
    for (std::size_t c = 0; c < r; ++c) facet[echelon.pivots[c]] = Rational(z[c + 1]);
    facet[n] = Rational(z[0]);
    facets.push_back(std::move(facet));
  }
  sort_unique(facets);
  for (auto& f : facets) {
    Rational bound = f.back();
    f.pop_back();
    out.add_inequality(std::move(f), std::move(bound));
  }
  return out;
}

}  // namespace lfpoly::geometry
