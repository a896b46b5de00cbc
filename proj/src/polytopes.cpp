#include "lfpoly/polytopes.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>

#include "lfpoly/error.hpp"
#include "lfpoly/linalg.hpp"
#include "lfpoly/parallel.hpp"
#include "lfpoly/simplex.hpp"

namespace lfpoly {

using geometry::HRep;
using geometry::VRep;

SizeGuard SizeGuard::from_environment() {
  SizeGuard guard;
  const char* env = std::getenv("LFPOLY_SIZE_GUARD");
  if (env == nullptr || *env == '\0') return guard;
  std::string text(env);
  try {
    const auto comma = text.find(',');
    guard.max_enumeration_entries = std::stoul(text.substr(0, comma));
    if (comma != std::string::npos) guard.max_rays = std::stoul(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "LFPOLY_SIZE_GUARD must look like entries[,rays], got '" + text + "'");
  }
  return guard;
}

namespace {

void check_enumeration(std::size_t dimension, const SizeGuard& guard, const std::string& what) {
  if (dimension > guard.max_enumeration_entries) {
    throw Error(ErrorKind::ScenarioTooLarge, what + ": table length " + std::to_string(dimension) +
                                                 " exceeds the enumeration guard " +
                                                 std::to_string(guard.max_enumeration_entries));
  }
}

geometry::DdOptions dd_options(const SizeGuard& guard) {
  geometry::DdOptions options;
  options.max_rays = guard.max_rays;
  return options;
}

bool next_digits(std::vector<int>& digits, std::span<const int> radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

// How an entry of the LF scenario reads off a restricted conditional table.
struct EntryMap {
  std::vector<std::size_t> sources;                  // restricted flat indices summed
  std::vector<std::pair<std::size_t, int>> queried;  // (friend ordinal, required c value)
};

std::vector<EntryMap> lf_entry_maps(const Scenario& s, const Scenario& restricted) {
  const Layout layout(s);
  const Layout rlayout(restricted);
  const std::size_t n = s.parties();
  std::vector<std::size_t> ordinal(n, 0);
  for (std::size_t f = 0; f < s.friends().size(); ++f) ordinal[s.friends()[f]] = f;

  std::vector<EntryMap> maps(layout.dimension());
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    const auto& x = layout.context(k);
    std::vector<int> xr(n);
    std::vector<bool> queried(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (s.is_friend(i)) {
        queried[i] = x[i] == 0;
        xr[i] = queried[i] ? 0 : x[i] - 1;
      } else {
        xr[i] = x[i];
      }
    }
    const std::size_t kr = rlayout.context_index(xr);
    std::vector<std::vector<int>> restricted_outcomes;
    for (std::size_t local = 0; local < rlayout.outcome_count(kr); ++local) {
      restricted_outcomes.push_back(rlayout.outcomes_at(kr, local));
    }
    for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
      const auto a = layout.outcomes_at(k, local);
      EntryMap& map = maps[layout.offset(k) + local];
      for (std::size_t i = 0; i < n; ++i) {
        if (queried[i]) map.queried.emplace_back(ordinal[i], a[i]);
      }
      for (std::size_t r = 0; r < restricted_outcomes.size(); ++r) {
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i) match = queried[i] || restricted_outcomes[r][i] == a[i];
        if (match) map.sources.push_back(rlayout.offset(kr) + r);
      }
    }
  }
  return maps;
}

bool matches(const EntryMap& map, const std::vector<int>& c) {
  return std::all_of(map.queried.begin(), map.queried.end(),
                     [&](const auto& q) { return c[q.first] == q.second; });
}

RationalVector lift(const std::vector<EntryMap>& maps, const std::vector<int>& c, const RationalVector& table) {
  RationalVector point(maps.size());
  for (std::size_t r = 0; r < maps.size(); ++r) {
    if (!matches(maps[r], c)) continue;
    for (auto j : maps[r].sources) {
      if (sgn(table[j]) != 0) point[r] += table[j];
    }
  }
  return point;
}

void check_conditional(const Scenario& restricted, const Behaviour& conditional) {
  if (conditional.scenario().outcome_table() != restricted.outcome_table()) {
    throw Error(ErrorKind::IncompatibleScenario, "conditional is not on the restricted public scenario");
  }
  if (auto w = signalling_witness(conditional)) {
    throw Error(ErrorKind::SignallingInput, "conditional signals through party " + std::to_string(w->party + 1));
  }
}

void check_friend_string(const Scenario& s, const std::vector<int>& c) {
  if (c.size() != s.friends().size()) {
    throw Error(ErrorKind::DimensionMismatch, "one friend outcome per friend required");
  }
  for (std::size_t f = 0; f < c.size(); ++f) {
    if (c[f] < 0 || c[f] >= s.outcomes(s.friends()[f], 0)) {
      throw Error(ErrorKind::BadStrategy, "friend outcome out of range");
    }
  }
}

}  // namespace

VRep bell_vertices(const Scenario& s) {
  const Layout layout(s);
  VRep out(layout.dimension());
  std::vector<int> a(s.parties());
  for (const auto& strategy : all_strategies(s)) {
    RationalVector point(layout.dimension());
    for (std::size_t k = 0; k < layout.contexts(); ++k) {
      const auto& x = layout.context(k);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = strategy[i][static_cast<std::size_t>(x[i])];
      point[layout.offset(k) + layout.local_index(k, a)] = 1;
    }
    out.add(std::move(point));
  }
  return out;
}

HRep ns_hrep(const Scenario& s) {
  const Layout layout(s);
  const std::size_t d = layout.dimension();
  HRep h(d);
  for (std::size_t j = 0; j < d; ++j) {
    RationalVector row(d);
    row[j] = -1;
    h.add_inequality(std::move(row), 0);
  }
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    RationalVector row(d);
    for (std::size_t j = layout.offset(k); j < layout.offset(k + 1); ++j) row[j] = 1;
    h.add_equality(std::move(row), 1);
  }
  for (auto& row : ns_equalities(s)) h.add_equality(std::move(row), 0);
  return h;
}

VRep ns_vertices(const Scenario& s, const SizeGuard& guard) {
  const Layout layout(s);
  check_enumeration(layout.dimension(), guard, "no-signalling vertices");

  std::vector<std::size_t> single;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < s.parties(); ++i) (s.settings(i) == 1 ? single : rest).push_back(i);

  if (single.empty()) {
    // Restrictions of different scenarios often coincide, so finished
    // enumerations are kept for the life of the process.
    static std::mutex mutex;
    static std::map<std::vector<std::vector<int>>, VRep> cache;
    {
      std::lock_guard lock(mutex);
      if (auto it = cache.find(s.outcome_table()); it != cache.end()) return it->second;
    }
    auto v = geometry::dd_h_to_v(ns_hrep(s), dd_options(guard));
    std::lock_guard lock(mutex);
    cache.emplace(s.outcome_table(), v);
    return v;
  }

  // A party with one setting just carries a classical outcome: the vertices
  // are a deterministic outcome for it times a vertex of the others.
  std::vector<RationalVector> points;
  if (rest.empty()) {
    for (std::size_t j = 0; j < layout.dimension(); ++j) {
      RationalVector p(layout.dimension());
      p[j] = 1;
      points.push_back(std::move(p));
    }
  } else {
    std::vector<std::vector<int>> rest_outcomes;
    for (auto i : rest) rest_outcomes.push_back(s.outcome_table()[i]);
    const Scenario sub = Scenario::make(rest_outcomes, {}, true);
    const Layout sub_layout(sub);
    const VRep sub_vertices = ns_vertices(sub, guard);

    std::vector<int> single_radix;
    for (auto i : single) single_radix.push_back(s.outcomes(i, 0));
    std::vector<int> fixed(single.size(), 0);
    do {
      for (const auto& v : sub_vertices.points()) {
        RationalVector p(layout.dimension());
        for (std::size_t k = 0; k < layout.contexts(); ++k) {
          const auto& x = layout.context(k);
          std::vector<int> xs;
          for (auto i : rest) xs.push_back(x[i]);
          const std::size_t ks = sub_layout.context_index(xs);
          for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
            const auto a = layout.outcomes_at(k, local);
            bool hit = true;
            for (std::size_t t = 0; t < single.size() && hit; ++t) hit = a[single[t]] == fixed[t];
            if (!hit) continue;
            std::vector<int> as;
            for (auto i : rest) as.push_back(a[i]);
            p[layout.offset(k) + local] = v[sub_layout.offset(ks) + sub_layout.local_index(ks, as)];
          }
        }
        points.push_back(std::move(p));
      }
    } while (next_digits(fixed, single_radix));
  }
  sort_unique(points);
  return VRep(layout.dimension(), std::move(points));
}

std::vector<std::vector<int>> friend_outcome_strings(const Scenario& s) {
  std::vector<int> radix;
  for (auto f : s.friends()) radix.push_back(s.outcomes(f, 0));
  std::vector<std::vector<int>> out;
  std::vector<int> c(radix.size(), 0);
  do {
    out.push_back(c);
  } while (next_digits(c, radix));
  return out;
}

RationalVector lf_point(const Scenario& s, const std::vector<int>& c, const Behaviour& conditional) {
  const Scenario restricted = restricted_public_scenario(s);
  check_friend_string(s, c);
  check_conditional(restricted, conditional);
  return lift(lf_entry_maps(s, restricted), c, conditional.entries());
}

Behaviour lf_behaviour(const LfModel& model) {
  const Scenario& s = model.scenario;
  const Scenario restricted = restricted_public_scenario(s);
  const auto maps = lf_entry_maps(s, restricted);
  if (model.branches.empty()) throw Error(ErrorKind::BadWeights, "LF model without branches");
  Rational total = 0;
  RationalVector entries(maps.size());
  for (const auto& branch : model.branches) {
    if (sgn(branch.weight) < 0) throw Error(ErrorKind::BadWeights, "negative branch weight");
    total += branch.weight;
    check_friend_string(s, branch.friend_outcomes);
    check_conditional(restricted, branch.conditional);
    if (sgn(branch.weight) == 0) continue;
    const auto point = lift(maps, branch.friend_outcomes, branch.conditional.entries());
    for (std::size_t j = 0; j < point.size(); ++j) {
      if (sgn(point[j]) != 0) entries[j] += branch.weight * point[j];
    }
  }
  if (total != 1) throw Error(ErrorKind::BadWeights, "branch weights sum to " + to_string(total));
  return Behaviour(s, std::move(entries));
}

VRep lf_vertices(const Scenario& s, const SizeGuard& guard) {
  const Layout layout(s);
  const Scenario restricted = restricted_public_scenario(s);
  check_enumeration(Layout(restricted).dimension(), guard, "LF vertices");
  const VRep ns = ns_vertices(restricted, guard);
  const auto maps = lf_entry_maps(s, restricted);
  const auto strings = friend_outcome_strings(s);

  // The marginal over queried friends must not depend on the setting chosen.
  std::vector<char> signalling(ns.size(), 0);
  parallel_for(ns.size(), [&](std::size_t l) {
    signalling[l] = is_no_signalling(Behaviour(restricted, ns[l])) ? 0 : 1;
  });
  if (std::find(signalling.begin(), signalling.end(), 1) != signalling.end()) {
    throw Error(ErrorKind::VerificationFailure, "restricted vertex list contains a signalling point");
  }

  std::vector<RationalVector> points(strings.size() * ns.size());
  parallel_for(points.size(), [&](std::size_t mu) {
    points[mu] = lift(maps, strings[mu / ns.size()], ns[mu % ns.size()]);
  });
  VRep out(layout.dimension());
  for (auto& p : points) out.add(std::move(p));
  if (out.size() != points.size()) {
    std::cerr << "warning: " << points.size() - out.size() << " coinciding LF points in " << s.describe()
              << "; the extreme-point count predicts " << points.size() << ", found " << out.size() << "\n";
  }
  return out;
}

Integer lf_extreme_count(const Scenario& s, const SizeGuard& guard) {
  Integer count = 1;
  for (auto f : s.friends()) count *= s.outcomes(f, 0);
  const Scenario restricted = restricted_public_scenario(s);
  check_enumeration(Layout(restricted).dimension(), guard, "LF extreme-point count");
  count *= static_cast<unsigned long>(ns_vertices(restricted, guard).size());
  return count;
}

BellMembership membership_bell(const Behaviour& b, const SizeGuard& guard) {
  if (b.dimension() > guard.max_membership_entries) {
    throw Error(ErrorKind::ScenarioTooLarge, "Bell membership: table length " + std::to_string(b.dimension()) +
                                                 " exceeds the membership guard");
  }
  const auto strategies = all_strategies(b.scenario());
  const VRep vertices = bell_vertices(b.scenario());
  const auto hull = geometry::in_convex_hull(b.entries(), vertices);
  BellMembership out;
  out.member = hull.member;
  if (hull.member) {
    LhvModel model;
    for (std::size_t k = 0; k < hull.weights.size(); ++k) {
      if (sgn(hull.weights[k]) == 0) continue;
      model.weights.push_back(hull.weights[k]);
      model.strategies.push_back(strategies[k]);
    }
    out.model = std::move(model);
  } else {
    out.separator = from_constraint(*hull.separator, "separator");
  }
  return out;
}

bool verify_bell_certificate(const Behaviour& b, const BellMembership& m) {
  const Scenario& s = b.scenario();
  if (m.member) {
    if (!m.model || m.model->weights.size() != m.model->strategies.size() || m.model->weights.empty()) return false;
    RationalVector sum(b.dimension());
    Rational total = 0;
    for (std::size_t k = 0; k < m.model->weights.size(); ++k) {
      const auto& w = m.model->weights[k];
      if (sgn(w) < 0) return false;
      total += w;
      try {
        const auto d = deterministic(s, m.model->strategies[k]);
        for (std::size_t j = 0; j < sum.size(); ++j) {
          if (sgn(d.entries()[j]) != 0) sum[j] += w * d.entries()[j];
        }
      } catch (const Error&) {
        return false;
      }
    }
    return total == 1 && sum == b.entries();
  }
  if (!m.separator || m.separator->coefficients.size() != b.dimension()) return false;
  const VRep vertices = bell_vertices(s);
  for (const auto& v : vertices.points()) {
    if (evaluate(*m.separator, v) > m.separator->bound) return false;
  }
  return evaluate(*m.separator, b.entries()) > m.separator->bound;
}

namespace {

// Decomposition system of an LF table: unnormalized conditionals q_c >= 0,
// one per friend string, then their context weights w_c >= 0.
struct LfSystem {
  Scenario restricted;
  std::vector<std::vector<int>> strings;
  std::size_t block = 0;  // restricted table length
  geometry::StandardFormLp lp;
  std::size_t norm_row = 0;
  std::size_t first_reproduction_row = 0;
};

LfSystem build_lf_system(const Scenario& s, std::span<const Rational> entries) {
  LfSystem sys{restricted_public_scenario(s), friend_outcome_strings(s), 0, {}, 0, 0};
  const Layout rlayout(sys.restricted);
  const std::size_t block = rlayout.dimension();
  const std::size_t strings = sys.strings.size();
  const std::size_t width = strings * block + strings;
  sys.block = block;
  auto& lp = sys.lp;

  const auto ns_basis = linalg::reduced_row_echelon(ns_equalities(sys.restricted), block).rows;
  for (std::size_t c = 0; c < strings; ++c) {
    for (const auto& r : ns_basis) {
      RationalVector row(width);
      std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(c * block));
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(0);
    }
  }
  for (std::size_t c = 0; c < strings; ++c) {
    for (std::size_t k = 0; k < rlayout.contexts(); ++k) {
      RationalVector row(width);
      for (std::size_t j = rlayout.offset(k); j < rlayout.offset(k + 1); ++j) row[c * block + j] = 1;
      row[strings * block + c] = -1;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(0);
    }
  }
  sys.norm_row = lp.rows.size();
  {
    RationalVector row(width);
    for (std::size_t c = 0; c < strings; ++c) row[strings * block + c] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(1);
  }
  sys.first_reproduction_row = lp.rows.size();
  const auto maps = lf_entry_maps(s, sys.restricted);
  for (std::size_t r = 0; r < maps.size(); ++r) {
    RationalVector row(width);
    for (std::size_t c = 0; c < strings; ++c) {
      if (!matches(maps[r], sys.strings[c])) continue;
      for (auto j : maps[r].sources) row[c * block + j] = 1;
    }
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(entries[r]);
  }
  return sys;
}

}  // namespace

Inequality lf_separator(const Scenario& s, const RationalVector& y) {
  const auto sys = build_lf_system(s, RationalVector(Layout(s).dimension()));
  if (y.size() != sys.lp.rows.size()) throw Error(ErrorKind::DimensionMismatch, "Farkas vector length");
  geometry::LinearConstraint c;
  c.coefficients.assign(y.begin() + static_cast<std::ptrdiff_t>(sys.first_reproduction_row), y.end());
  c.bound = -y[sys.norm_row];
  return from_constraint(c, "LF separator");
}

LfMembership membership_lf(const Behaviour& b, const SizeGuard& guard) {
  if (b.dimension() > guard.max_membership_entries) {
    throw Error(ErrorKind::ScenarioTooLarge, "LF membership: table length " + std::to_string(b.dimension()) +
                                                 " exceeds the membership guard");
  }
  const Scenario& s = b.scenario();
  auto sys = build_lf_system(s, b.entries());
  const auto solved = geometry::solve_standard_form(sys.lp);
  LfMembership out;
  if (solved.status == geometry::LpStatus::Infeasible) {
    out.farkas = solved.farkas;
    out.separator = lf_separator(s, out.farkas);
    return out;
  }
  out.member = true;
  LfModel model{s, {}};
  const std::size_t strings = sys.strings.size();
  for (std::size_t c = 0; c < strings; ++c) {
    const Rational& w = solved.x[strings * sys.block + c];
    if (sgn(w) == 0) continue;
    RationalVector table(solved.x.begin() + static_cast<std::ptrdiff_t>(c * sys.block),
                         solved.x.begin() + static_cast<std::ptrdiff_t>((c + 1) * sys.block));
    for (auto& v : table) v /= w;
    model.branches.push_back(LfBranch{sys.strings[c], w, Behaviour(sys.restricted, std::move(table))});
  }
  out.model = std::move(model);
  return out;
}

bool verify_lf_model(const LfModel& model, const Behaviour& b) {
  if (!(model.scenario == b.scenario())) return false;
  try {
    return lf_behaviour(model).entries() == b.entries();
  } catch (const Error&) {
    return false;
  }
}

bool verify_lf_farkas(const Behaviour& b, const RationalVector& y) {
  const auto sys = build_lf_system(b.scenario(), b.entries());
  const auto& lp = sys.lp;
  if (y.size() != lp.rows.size()) return false;
  const std::size_t width = lp.rows.empty() ? 0 : lp.rows.front().size();
  for (std::size_t j = 0; j < width; ++j) {
    Rational column = 0;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      if (sgn(y[i]) != 0 && sgn(lp.rows[i][j]) != 0) column += y[i] * lp.rows[i][j];
    }
    if (sgn(column) > 0) return false;
  }
  return sgn(dot(y, lp.rhs)) > 0;
}

NsMembership membership_ns(const Behaviour& b) {
  NsMembership out;
  out.witness = signalling_witness(b);
  out.member = !out.witness.has_value();
  return out;
}

std::vector<Inequality> facets(const VRep& v, const SizeGuard& guard) {
  check_enumeration(v.dimension(), guard, "facet enumeration");
  const HRep h = geometry::dd_v_to_h(v, dd_options(guard));
  std::vector<Inequality> out;
  for (const auto& c : h.inequalities()) out.push_back(from_constraint(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Inequality> genuine_lf_inequalities(const Scenario& s, const SizeGuard& guard) {
  const auto lf = facets(lf_vertices(s, guard), guard);
  const auto bell = facets(bell_vertices(s), guard);
  std::vector<Inequality> out;
  for (const auto& f : lf) {
    if (!std::binary_search(bell.begin(), bell.end(), f)) out.push_back(f);
  }
  return out;
}

Dimensions polytope_dimensions(const Scenario& s, const SizeGuard& guard) {
  Dimensions dims;
  dims.bell = geometry::affine_dimension(bell_vertices(s));
  // The uniform table is strictly positive, so the NS affine hull is the
  // solution space of its equalities.
  const Layout layout(s);
  auto rows = ns_equalities(s);
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    RationalVector row(layout.dimension());
    for (std::size_t j = layout.offset(k); j < layout.offset(k + 1); ++j) row[j] = 1;
    rows.push_back(std::move(row));
  }
  dims.ns = layout.dimension() - linalg::rank(rows, layout.dimension());
  try {
    dims.lf = geometry::affine_dimension(lf_vertices(s, guard));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ScenarioTooLarge) throw;
    // B <= LF <= NS pins the LF dimension when the outer two agree.
    if (dims.bell == dims.ns && lift_preserves_no_signalling(s)) {
      dims.lf = dims.bell;
      dims.lf_from_sandwich = true;
    }
  }
  return dims;
}

std::size_t polytope_dimension(const Scenario& s, const SizeGuard& guard) {
  const auto dims = polytope_dimensions(s, guard);
  if (dims.bell != dims.ns || (dims.lf && *dims.lf != dims.bell)) {
    std::ostringstream msg;
    msg << "dimensions disagree: B " << dims.bell << ", NS " << dims.ns;
    if (dims.lf) msg << ", LF " << *dims.lf;
    throw Error(ErrorKind::VerificationFailure, msg.str());
  }
  return dims.bell;
}

LfModel lf_model_of_strategy(const Scenario& s, const Strategy& strategy) {
  check_strategy(s, strategy);
  const Scenario restricted = restricted_public_scenario(s);
  std::vector<int> c;
  for (auto f : s.friends()) c.push_back(strategy[f][0]);
  Strategy rest(s.parties());
  for (std::size_t i = 0; i < s.parties(); ++i) {
    for (int x = 0; x < restricted.settings(i); ++x) {
      rest[i].push_back(strategy[i][static_cast<std::size_t>(restricted.original_setting(i, x))]);
    }
  }
  return LfModel{s, {LfBranch{c, 1, deterministic(restricted, rest)}}};
}

bool lift_preserves_no_signalling(const Scenario& s) {
  const Scenario restricted = restricted_public_scenario(s);
  const Layout layout(s);
  const Layout rlayout(restricted);
  const std::size_t rd = rlayout.dimension();

  // Affine hull of NS(restricted) as [A | b]; the last column is the right-hand side.
  std::vector<RationalVector> hull;
  for (auto& row : ns_equalities(restricted)) {
    row.push_back(0);
    hull.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < rlayout.contexts(); ++k) {
    RationalVector row(rd + 1);
    for (std::size_t j = rlayout.offset(k); j < rlayout.offset(k + 1); ++j) row[j] = 1;
    row[rd] = 1;
    hull.push_back(std::move(row));
  }
  const auto echelon = linalg::reduced_row_echelon(hull, rd + 1);
  auto in_row_space = [&](RationalVector v) {
    for (std::size_t r = 0; r < echelon.rows.size(); ++r) {
      const Rational f = v[echelon.pivots[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (sgn(echelon.rows[r][j]) != 0) v[j] -= f * echelon.rows[r][j];
      }
    }
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
  };

  // Targets: every NS equality (value 0) and every normalization row (value 1) of s.
  std::vector<RationalVector> targets;
  for (auto& row : ns_equalities(s)) {
    row.push_back(0);
    targets.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    RationalVector row(layout.dimension() + 1);
    for (std::size_t j = layout.offset(k); j < layout.offset(k + 1); ++j) row[j] = 1;
    row[layout.dimension()] = 1;
    targets.push_back(std::move(row));
  }

  // The lift is a 0/1 matrix, so positivity is inherited; only the
  // equalities need pulling back through it.
  const auto maps = lf_entry_maps(s, restricted);
  for (const auto& c : friend_outcome_strings(s)) {
    for (const auto& t : targets) {
      RationalVector pulled(rd + 1);
      for (std::size_t r = 0; r < maps.size(); ++r) {
        if (sgn(t[r]) == 0 || !matches(maps[r], c)) continue;
        for (auto j : maps[r].sources) pulled[j] += t[r];
      }
      pulled[rd] = t.back();
      if (!in_row_space(std::move(pulled))) return false;
    }
  }
  return true;
}

std::vector<Behaviour> embedded_pr_boxes(const Scenario& s) {
  std::vector<Behaviour> out;
  for (std::size_t i = 0; i < s.parties(); ++i) {
    for (std::size_t j = i + 1; j < s.parties(); ++j) {
      for (int x0 = 0; x0 < s.settings(i); ++x0) {
        for (int x1 = x0 + 1; x1 < s.settings(i); ++x1) {
          for (int y0 = 0; y0 < s.settings(j); ++y0) {
            for (int y1 = y0 + 1; y1 < s.settings(j); ++y1) {
              out.push_back(embedded_pr_box(s, i, j, {x0, x1}, {y0, y1}));
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace lfpoly
