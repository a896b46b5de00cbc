#pragma once

// Reference computations for the tests. Everything here is written from the
// definitions with its own elimination code and shares no algorithm with
// the library: brute-force hull membership by enumerating point subsets,
// vertex tests by active-constraint rank, closed-form counts.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;

// Row-reduces in place; returns the pivot columns.
inline std::vector<std::size_t> eliminate(Mat& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Q lead = m[row][col];
    for (auto& v : m[row]) v /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Q f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Mat m) {
  const std::size_t columns = m.empty() ? 0 : m.front().size();
  return eliminate(m, columns).size();
}

inline std::size_t affine_dimension(const std::vector<Vec>& points) {
  Mat diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Vec d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return rank(diffs);
}

// Convex weights on an affinely independent subset, found by trying every
// subset (Caratheodory). Only for a dozen points or so.
inline std::optional<Vec> hull_weights(const Vec& point, const std::vector<Vec>& points) {
  const std::size_t n = points.size();
  const std::size_t d = point.size();
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1UL) chosen.push_back(i);
    }
    if (chosen.size() > d + 1) continue;
    // Columns: chosen points with a trailing 1; augmented by (point, 1).
    Mat m(d + 1, Vec(chosen.size() + 1));
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < chosen.size(); ++c) m[r][c] = points[chosen[c]][r];
      m[r][chosen.size()] = point[r];
    }
    for (std::size_t c = 0; c < chosen.size(); ++c) m[d][c] = 1;
    m[d][chosen.size()] = 1;
    const auto pivots = eliminate(m, chosen.size() + 1);
    // A pivot in the last column means the system is inconsistent.
    if (pivots.size() != chosen.size() || pivots.back() == chosen.size()) continue;
    Vec weights(n);
    bool ok = true;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const Q w = m[k][chosen.size()];
      if (w < 0) ok = false;
      weights[chosen[pivots[k]]] = w;
    }
    if (ok) return weights;
  }
  return std::nullopt;
}

// Flat table layout: contexts in mixed radix, party 0 most significant, then
// outcomes in mixed radix. Rebuilt here from the description, not the library.
struct Table {
  std::vector<std::vector<int>> outcomes;  // [party][setting]

  std::vector<std::vector<int>> contexts() const {
    std::vector<std::vector<int>> out{{}};
    for (const auto& party : outcomes) {
      std::vector<std::vector<int>> next;
      for (const auto& prefix : out) {
        for (int x = 0; x < static_cast<int>(party.size()); ++x) {
          auto v = prefix;
          v.push_back(x);
          next.push_back(v);
        }
      }
      out = next;
    }
    return out;
  }

  std::vector<std::vector<int>> outcome_strings(const std::vector<int>& x) const {
    std::vector<std::vector<int>> out{{}};
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      std::vector<std::vector<int>> next;
      for (const auto& prefix : out) {
        for (int a = 0; a < outcomes[i][static_cast<std::size_t>(x[i])]; ++a) {
          auto v = prefix;
          v.push_back(a);
          next.push_back(v);
        }
      }
      out = next;
    }
    return out;
  }

  // Calls f(x, a, flat index) in layout order.
  void each(const std::function<void(const std::vector<int>&, const std::vector<int>&, std::size_t)>& f) const {
    std::size_t flat = 0;
    for (const auto& x : contexts()) {
      for (const auto& a : outcome_strings(x)) f(x, a, flat++);
    }
  }

  std::size_t dimension() const {
    std::size_t d = 0;
    each([&](const auto&, const auto&, std::size_t) { ++d; });
    return d;
  }
};

using Strategy = std::vector<std::vector<int>>;

inline std::vector<Strategy> strategies(const Table& t) {
  std::vector<Strategy> out{Strategy(t.outcomes.size())};
  for (std::size_t i = 0; i < t.outcomes.size(); ++i) {
    for (int o : t.outcomes[i]) {
      std::vector<Strategy> next;
      for (const auto& s : out) {
        for (int a = 0; a < o; ++a) {
          auto v = s;
          v[i].push_back(a);
          next.push_back(v);
        }
      }
      out = next;
    }
  }
  return out;
}

inline Vec deterministic_point(const Table& t, const Strategy& s) {
  Vec p(t.dimension());
  t.each([&](const auto& x, const auto& a, std::size_t j) {
    bool hit = true;
    for (std::size_t i = 0; i < a.size(); ++i) hit = hit && s[i][static_cast<std::size_t>(x[i])] == a[i];
    p[j] = hit ? 1 : 0;
  });
  return p;
}

// p(ab|xy) = 1/2 [a xor b = xy xor alpha x xor beta y xor gamma].
inline std::vector<Vec> pr_family() {
  std::vector<Vec> out;
  const Table t{{{2, 2}, {2, 2}}};
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      for (int gamma = 0; gamma < 2; ++gamma) {
        Vec p(16);
        t.each([&](const auto& x, const auto& a, std::size_t j) {
          const int rhs = (x[0] * x[1]) ^ (alpha * x[0]) ^ (beta * x[1]) ^ gamma;
          p[j] = (a[0] ^ a[1]) == rhs ? Q(1, 2) : Q(0);
        });
        out.push_back(p);
      }
    }
  }
  return out;
}

// The 8 CHSH facets of the two-party, two-setting, two-outcome Bell
// polytope, each as coefficient vector with bound 2.
inline std::vector<Vec> chsh_facets() {
  std::vector<Vec> out;
  const Table t{{{2, 2}, {2, 2}}};
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      for (int gamma = 0; gamma < 2; ++gamma) {
        Vec c(16);
        t.each([&](const auto& x, const auto& a, std::size_t j) {
          const int sign_bit = (x[0] * x[1]) ^ (alpha * x[0]) ^ (beta * x[1]) ^ gamma ^ a[0] ^ a[1];
          c[j] = sign_bit ? -1 : 1;
        });
        out.push_back(c);
      }
    }
  }
  return out;
}

inline Q dot(const Vec& a, const Vec& b) {
  Q s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// Bell membership in the CHSH scenario from its complete facet list.
inline bool chsh_bell_local(const Vec& p) {
  for (const auto& q : p) {
    if (q < 0) return false;
  }
  for (const auto& f : chsh_facets()) {
    if (dot(f, p) > 2) return false;
  }
  return true;
}

// No-signalling equalities written directly from the definition: for each
// party i, each fixed setting string of the others and outcome string of
// the others, the sum over a_i is the same for all x_i.
inline Mat ns_rows(const Table& t) {
  Mat rows;
  const std::size_t d = t.dimension();
  const auto contexts = t.contexts();
  for (std::size_t i = 0; i < t.outcomes.size(); ++i) {
    for (const auto& x : contexts) {
      if (x[i] != 0) continue;
      for (int xi = 1; xi < static_cast<int>(t.outcomes[i].size()); ++xi) {
        auto y = x;
        y[i] = xi;
        for (const auto& a : t.outcome_strings(x)) {
          if (a[i] != 0) continue;
          Vec row(d);
          t.each([&](const auto& xx, const auto& aa, std::size_t j) {
            bool rest = true;
            for (std::size_t k = 0; k < aa.size(); ++k) {
              if (k != i) rest = rest && aa[k] == a[k];
            }
            if (!rest) return;
            if (xx == x) row[j] += 1;
            if (xx == y) row[j] -= 1;
          });
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

inline Mat normalization_rows(const Table& t) {
  Mat rows;
  const std::size_t d = t.dimension();
  for (const auto& x : t.contexts()) {
    Vec row(d);
    t.each([&](const auto& xx, const auto&, std::size_t j) {
      if (xx == x) row[j] = 1;
    });
    rows.push_back(row);
  }
  return rows;
}

inline bool no_signalling(const Table& t, const Vec& p) {
  for (const auto& r : ns_rows(t)) {
    if (dot(r, p) != 0) return false;
  }
  return true;
}

// Vertex of NS: feasible and the tight constraints have full rank.
inline bool is_ns_vertex(const Table& t, const Vec& p) {
  if (!no_signalling(t, p)) return false;
  Mat active = ns_rows(t);
  for (const auto& r : normalization_rows(t)) {
    if (dot(r, p) != 1) return false;
    active.push_back(r);
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < 0) return false;
    if (p[j] == 0) {
      Vec e(p.size());
      e[j] = 1;
      active.push_back(e);
    }
  }
  return rank(active) == p.size();
}

// Dimension of the no-signalling affine hull in Collins-Gisin counting:
// prod_i (1 + sum_x (o_ix - 1)) - 1.
inline std::size_t ns_dimension(const Table& t) {
  std::size_t prod = 1;
  for (const auto& party : t.outcomes) {
    std::size_t local = 1;
    for (int o : party) local += static_cast<std::size_t>(o - 1);
    prod *= local;
  }
  return prod - 1;
}

inline Q random_rational(std::mt19937_64& rng, int max_num = 9) {
  std::uniform_int_distribution<int> dist(0, max_num);
  return Q(dist(rng));
}

// Random convex weights with small denominators, strictly positive.
inline Vec random_weights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(1, 9);
  Vec w(n);
  Q total = 0;
  for (auto& v : w) {
    v = dist(rng);
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace oracle
