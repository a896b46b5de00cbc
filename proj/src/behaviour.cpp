#include "lfpoly/behaviour.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lfpoly/error.hpp"

namespace lfpoly {

namespace {

std::string format_context(std::span<const int> x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + std::to_string(x[i] + 1);
  return out + ")";
}

// Advances a mixed-radix counter, last digit fastest. Returns false on wrap.
bool next_digits(std::vector<int>& digits, std::span<const int> radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

Layout::Layout(const Scenario& s) : outcomes_(s.outcome_table()) {
  for (std::size_t i = 0; i < s.parties(); ++i) settings_.push_back(s.settings(i));
  std::vector<int> x(settings_.size(), 0);
  offsets_.push_back(0);
  do {
    std::size_t count = 1;
    for (std::size_t i = 0; i < x.size(); ++i) count *= static_cast<std::size_t>(outcomes_[i][x[i]]);
    contexts_.push_back(x);
    offsets_.push_back(offsets_.back() + count);
  } while (next_digits(x, settings_));
  dimension_ = offsets_.back();
}

std::size_t Layout::context_index(std::span<const int> settings) const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < settings_.size(); ++i) {
    k = k * static_cast<std::size_t>(settings_[i]) + static_cast<std::size_t>(settings[i]);
  }
  return k;
}

std::size_t Layout::local_index(std::size_t k, std::span<const int> outcomes) const {
  const auto& x = contexts_[k];
  std::size_t local = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    local = local * static_cast<std::size_t>(outcomes_[i][x[i]]) + static_cast<std::size_t>(outcomes[i]);
  }
  return local;
}

std::size_t Layout::index(std::span<const int> settings, std::span<const int> outcomes) const {
  const std::size_t k = context_index(settings);
  return offsets_[k] + local_index(k, outcomes);
}

std::vector<int> Layout::outcomes_at(std::size_t k, std::size_t local) const {
  const auto& x = contexts_[k];
  std::vector<int> a(x.size());
  for (std::size_t i = x.size(); i-- > 0;) {
    const auto radix = static_cast<std::size_t>(outcomes_[i][x[i]]);
    a[i] = static_cast<int>(local % radix);
    local /= radix;
  }
  return a;
}

std::pair<std::size_t, std::vector<int>> Layout::decode(std::size_t flat) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat);
  const auto k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {k, outcomes_at(k, flat - offsets_[k])};
}

Behaviour::Behaviour(Scenario s, RationalVector entries)
    : scenario_(std::move(s)), layout_(scenario_), entries_(std::move(entries)) {
  if (entries_.size() != layout_.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "behaviour has " + std::to_string(entries_.size()) +
                                                  " entries, scenario needs " +
                                                  std::to_string(layout_.dimension()));
  }
  for (std::size_t k = 0; k < layout_.contexts(); ++k) {
    Rational total = 0;
    for (std::size_t j = layout_.offset(k); j < layout_.offset(k + 1); ++j) {
      if (sgn(entries_[j]) < 0) {
        throw Error(ErrorKind::NegativeEntry, "entry " + std::to_string(j) + " in context " +
                                                  format_context(layout_.context(k)) + " is " +
                                                  to_string(entries_[j]));
      }
      total += entries_[j];
    }
    if (total != 1) {
      throw Error(ErrorKind::NormalizationFailure,
                  "context " + format_context(layout_.context(k)) + " sums to " + to_string(total));
    }
  }
}

namespace {

// Marginal of the parties other than `party` in context k, as a flat list in
// outcome order with that party's digit removed.
RationalVector marginal_without(const Behaviour& b, std::size_t k, std::size_t party) {
  const auto& layout = b.layout();
  const auto& x = layout.context(k);
  const int own = b.scenario().outcomes(party, x[party]);
  const std::size_t count = layout.outcome_count(k) / static_cast<std::size_t>(own);
  RationalVector out(count);
  // Outcome digits right of `party` form the low part of the local index.
  std::size_t low = 1;
  for (std::size_t i = party + 1; i < x.size(); ++i) low *= static_cast<std::size_t>(b.scenario().outcomes(i, x[i]));
  for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
    const std::size_t high = local / (low * static_cast<std::size_t>(own));
    out[high * low + local % low] += b.entries()[layout.offset(k) + local];
  }
  return out;
}

}  // namespace

std::optional<SignallingWitness> signalling_witness(const Behaviour& b) {
  const auto& layout = b.layout();
  const auto& s = b.scenario();
  for (std::size_t party = 0; party < s.parties(); ++party) {
    if (s.settings(party) < 2) continue;
    for (std::size_t k = 0; k < layout.contexts(); ++k) {
      const auto& x = layout.context(k);
      if (x[party] != 0) continue;
      const auto base = marginal_without(b, k, party);
      auto y = x;
      for (int alt = 1; alt < s.settings(party); ++alt) {
        y[party] = alt;
        if (marginal_without(b, layout.context_index(y), party) != base) {
          return SignallingWitness{party, x, y};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_no_signalling(const Behaviour& b) { return !signalling_witness(b).has_value(); }

std::vector<RationalVector> ns_equalities(const Scenario& s) {
  const Layout layout(s);
  std::vector<RationalVector> rows;
  for (std::size_t party = 0; party < s.parties(); ++party) {
    for (std::size_t k = 0; k < layout.contexts(); ++k) {
      const auto& x = layout.context(k);
      if (x[party] != 0) continue;
      auto y = x;
      for (int alt = 1; alt < s.settings(party); ++alt) {
        y[party] = alt;
        const std::size_t k2 = layout.context_index(y);
        // One row per outcome string of the other parties.
        std::vector<int> rest_radix;
        for (std::size_t i = 0; i < s.parties(); ++i) rest_radix.push_back(i == party ? 1 : s.outcomes(i, x[i]));
        std::vector<int> a(s.parties(), 0);
        do {
          RationalVector row(layout.dimension());
          auto a2 = a;
          for (int v = 0; v < s.outcomes(party, x[party]); ++v) {
            a2[party] = v;
            row[layout.offset(k) + layout.local_index(k, a2)] += 1;
          }
          for (int v = 0; v < s.outcomes(party, alt); ++v) {
            a2[party] = v;
            row[layout.offset(k2) + layout.local_index(k2, a2)] -= 1;
          }
          rows.push_back(std::move(row));
        } while (next_digits(a, rest_radix));
      }
    }
  }
  return rows;
}

Behaviour marginalize_parties(const Behaviour& b, const std::vector<std::size_t>& excluded) {
  const auto& s = b.scenario();
  std::vector<bool> drop(s.parties(), false);
  for (auto e : excluded) {
    if (e >= s.parties()) throw Error(ErrorKind::BadFriendIndex, "party index out of range");
    drop[e] = true;
  }
  if (std::count(drop.begin(), drop.end(), false) == 0) {
    throw Error(ErrorKind::DegenerateScenario, "cannot exclude every party");
  }
  if (auto w = signalling_witness(b)) {
    throw Error(ErrorKind::SignallingInput, "marginal of a signalling behaviour depends on party " +
                                                std::to_string(w->party + 1) + "'s setting");
  }

  std::vector<std::vector<int>> outcomes;
  std::vector<std::vector<int>> origin;
  std::vector<std::size_t> friends;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < s.parties(); ++i) {
    if (drop[i]) continue;
    if (s.is_friend(i)) friends.push_back(kept.size());
    kept.push_back(i);
    outcomes.push_back(s.outcome_table()[i]);
    origin.push_back(s.setting_origin()[i]);
  }
  const bool derived = s.derived() || kept.size() < 2;
  Scenario reduced = Scenario::make(std::move(outcomes), std::move(friends), derived, std::move(origin));
  const Layout target(reduced);
  RationalVector entries(target.dimension());

  const auto& layout = b.layout();
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    const auto& x = layout.context(k);
    bool fixed = true;
    for (std::size_t i = 0; i < x.size(); ++i) fixed = fixed && (!drop[i] || x[i] == 0);
    if (!fixed) continue;
    std::vector<int> xr;
    for (auto i : kept) xr.push_back(x[i]);
    const std::size_t kr = target.context_index(xr);
    for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
      const auto a = layout.outcomes_at(k, local);
      std::vector<int> ar;
      for (auto i : kept) ar.push_back(a[i]);
      entries[target.offset(kr) + target.local_index(kr, ar)] += b.entries()[layout.offset(k) + local];
    }
  }
  return Behaviour(std::move(reduced), std::move(entries));
}

Scenario restrict_scenario(const Scenario& s, const std::vector<std::vector<int>>& kept) {
  if (kept.size() != s.parties()) throw Error(ErrorKind::DimensionMismatch, "one setting list per party");
  std::vector<std::vector<int>> outcomes;
  std::vector<std::vector<int>> origin;
  std::vector<std::size_t> friends;
  bool derived = s.derived();
  for (std::size_t i = 0; i < s.parties(); ++i) {
    if (kept[i].empty()) {
      throw Error(ErrorKind::EmptyRestriction, "party " + std::to_string(i + 1) + " keeps no setting");
    }
    std::vector<bool> seen(static_cast<std::size_t>(s.settings(i)), false);
    std::vector<int> o;
    std::vector<int> g;
    for (int x : kept[i]) {
      if (x < 0 || x >= s.settings(i) || seen[static_cast<std::size_t>(x)]) {
        throw Error(ErrorKind::BadStrategy, "invalid kept setting for party " + std::to_string(i + 1));
      }
      seen[static_cast<std::size_t>(x)] = true;
      o.push_back(s.outcomes(i, x));
      g.push_back(s.original_setting(i, x));
    }
    if (s.is_friend(i) && kept[i].front() == 0) friends.push_back(i);
    derived = derived || kept[i].size() < 2;
    outcomes.push_back(std::move(o));
    origin.push_back(std::move(g));
  }
  return Scenario::make(std::move(outcomes), std::move(friends), derived, std::move(origin));
}

Behaviour restrict_settings(const Behaviour& b, const std::vector<std::vector<int>>& kept) {
  Scenario target_scenario = restrict_scenario(b.scenario(), kept);
  const Layout target(target_scenario);
  RationalVector entries(target.dimension());
  const auto& layout = b.layout();
  for (std::size_t k = 0; k < target.contexts(); ++k) {
    const auto& xr = target.context(k);
    std::vector<int> x(xr.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = kept[i][static_cast<std::size_t>(xr[i])];
    const std::size_t source = layout.offset(layout.context_index(x));
    std::copy_n(b.entries().begin() + static_cast<std::ptrdiff_t>(source), target.outcome_count(k),
                entries.begin() + static_cast<std::ptrdiff_t>(target.offset(k)));
  }
  return Behaviour(std::move(target_scenario), std::move(entries));
}

Relabeling identity_relabeling(const Scenario& s) {
  Relabeling r;
  for (std::size_t i = 0; i < s.parties(); ++i) {
    r.parties.push_back(i);
    std::vector<int> xs(static_cast<std::size_t>(s.settings(i)));
    std::iota(xs.begin(), xs.end(), 0);
    r.settings.push_back(xs);
    std::vector<std::vector<int>> as;
    for (int x = 0; x < s.settings(i); ++x) {
      std::vector<int> a(static_cast<std::size_t>(s.outcomes(i, x)));
      std::iota(a.begin(), a.end(), 0);
      as.push_back(std::move(a));
    }
    r.outcomes.push_back(std::move(as));
  }
  return r;
}

Relabeling inverse(const Relabeling& r) {
  const std::size_t n = r.parties.size();
  Relabeling inv;
  inv.parties.resize(n);
  inv.settings.resize(n);
  inv.outcomes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = r.parties[i];
    inv.parties[j] = i;
    inv.settings[j].resize(r.settings[i].size());
    inv.outcomes[j].resize(r.settings[i].size());
    for (std::size_t x = 0; x < r.settings[i].size(); ++x) {
      const auto y = static_cast<std::size_t>(r.settings[i][x]);
      inv.settings[j][y] = static_cast<int>(x);
      inv.outcomes[j][y].resize(r.outcomes[i][x].size());
      for (std::size_t a = 0; a < r.outcomes[i][x].size(); ++a) {
        inv.outcomes[j][y][static_cast<std::size_t>(r.outcomes[i][x][a])] = static_cast<int>(a);
      }
    }
  }
  return inv;
}

namespace {

bool is_permutation_of_range(const std::vector<int>& v) {
  std::vector<bool> seen(v.size(), false);
  for (int e : v) {
    if (e < 0 || static_cast<std::size_t>(e) >= v.size() || seen[static_cast<std::size_t>(e)]) return false;
    seen[static_cast<std::size_t>(e)] = true;
  }
  return true;
}

void check_relabeling(const Scenario& s, const Relabeling& r) {
  const std::size_t n = s.parties();
  if (r.parties.size() != n || r.settings.size() != n || r.outcomes.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "relabeling has the wrong number of parties");
  }
  std::vector<int> as_int(r.parties.begin(), r.parties.end());
  if (!is_permutation_of_range(as_int)) throw Error(ErrorKind::BadStrategy, "party map is not a permutation");
  for (std::size_t i = 0; i < n; ++i) {
    if (r.settings[i].size() != static_cast<std::size_t>(s.settings(i)) || !is_permutation_of_range(r.settings[i])) {
      throw Error(ErrorKind::BadStrategy, "setting map of party " + std::to_string(i + 1) + " is not a permutation");
    }
    for (int x = 0; x < s.settings(i); ++x) {
      const auto& a = r.outcomes[i][static_cast<std::size_t>(x)];
      if (a.size() != static_cast<std::size_t>(s.outcomes(i, x)) || !is_permutation_of_range(a)) {
        throw Error(ErrorKind::BadStrategy, "outcome map is not a permutation");
      }
    }
    if (s.is_friend(i) != s.is_friend(r.parties[i])) {
      throw Error(ErrorKind::FriendStructureViolation,
                  "party " + std::to_string(i + 1) + " and its image differ in having a friend");
    }
    if (s.is_friend(i) && r.settings[i][0] != 0) {
      throw Error(ErrorKind::FriendStructureViolation,
                  "query setting of party " + std::to_string(i + 1) + " must stay first");
    }
  }
}

}  // namespace

Scenario relabel(const Scenario& s, const Relabeling& r) {
  check_relabeling(s, r);
  const std::size_t n = s.parties();
  std::vector<std::vector<int>> outcomes(n);
  std::vector<std::vector<int>> origin(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = r.parties[i];
    outcomes[j].resize(static_cast<std::size_t>(s.settings(i)));
    origin[j].resize(static_cast<std::size_t>(s.settings(i)));
    for (int x = 0; x < s.settings(i); ++x) {
      const auto y = static_cast<std::size_t>(r.settings[i][static_cast<std::size_t>(x)]);
      outcomes[j][y] = s.outcomes(i, x);
      origin[j][y] = s.original_setting(i, x);
    }
  }
  return Scenario::make(std::move(outcomes), s.friends(), s.derived(), std::move(origin));
}

Behaviour relabel(const Behaviour& b, const Relabeling& r) {
  Scenario target_scenario = relabel(b.scenario(), r);
  const Layout target(target_scenario);
  const auto& layout = b.layout();
  RationalVector entries(target.dimension());
  const std::size_t n = layout.parties();
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    const auto& x = layout.context(k);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) y[r.parties[i]] = r.settings[i][static_cast<std::size_t>(x[i])];
    const std::size_t k2 = target.context_index(y);
    for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
      const auto a = layout.outcomes_at(k, local);
      std::vector<int> c(n);
      for (std::size_t i = 0; i < n; ++i) {
        c[r.parties[i]] = r.outcomes[i][static_cast<std::size_t>(x[i])][static_cast<std::size_t>(a[i])];
      }
      entries[target.offset(k2) + target.local_index(k2, c)] = b.entries()[layout.offset(k) + local];
    }
  }
  return Behaviour(std::move(target_scenario), std::move(entries));
}

void check_strategy(const Scenario& s, const Strategy& strategy) {
  if (strategy.size() != s.parties()) throw Error(ErrorKind::BadStrategy, "one row per party required");
  for (std::size_t i = 0; i < s.parties(); ++i) {
    if (strategy[i].size() != static_cast<std::size_t>(s.settings(i))) {
      throw Error(ErrorKind::BadStrategy, "party " + std::to_string(i + 1) + " needs one outcome per setting");
    }
    for (int x = 0; x < s.settings(i); ++x) {
      const int a = strategy[i][static_cast<std::size_t>(x)];
      if (a < 0 || a >= s.outcomes(i, x)) {
        throw Error(ErrorKind::BadStrategy, "outcome out of range for party " + std::to_string(i + 1) +
                                                ", setting " + std::to_string(x + 1));
      }
    }
  }
}

Behaviour deterministic(const Scenario& s, const Strategy& strategy) {
  check_strategy(s, strategy);
  const Layout layout(s);
  RationalVector entries(layout.dimension());
  std::vector<int> a(s.parties());
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    const auto& x = layout.context(k);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = strategy[i][static_cast<std::size_t>(x[i])];
    entries[layout.offset(k) + layout.local_index(k, a)] = 1;
  }
  return Behaviour(s, std::move(entries));
}

Behaviour uniform(const Scenario& s) {
  const Layout layout(s);
  RationalVector entries(layout.dimension());
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    const Rational p(1, static_cast<unsigned long>(layout.outcome_count(k)));
    for (std::size_t j = layout.offset(k); j < layout.offset(k + 1); ++j) entries[j] = p;
  }
  return Behaviour(s, std::move(entries));
}

Behaviour pr_box(const Scenario& s) {
  if (s.parties() != 2 || s.settings(0) != 2 || s.settings(1) != 2) {
    throw Error(ErrorKind::IncompatibleScenario, "PR box needs two parties with two settings each");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (int x = 0; x < 2; ++x) {
      if (s.outcomes(i, x) != 2) throw Error(ErrorKind::IncompatibleScenario, "PR box needs binary outcomes");
    }
  }
  return embedded_pr_box(s, 0, 1, {0, 1}, {0, 1});
}

Behaviour embedded_pr_box(const Scenario& s, std::size_t first, std::size_t second, std::array<int, 2> sx,
                          std::array<int, 2> sy) {
  if (first == second || first >= s.parties() || second >= s.parties()) {
    throw Error(ErrorKind::IncompatibleScenario, "PR box needs two distinct parties");
  }
  auto role = [](std::array<int, 2> pair, int x) { return x == pair[0] ? 0 : x == pair[1] ? 1 : -1; };
  for (int x : sx) {
    if (x < 0 || x >= s.settings(first) || s.outcomes(first, x) < 2 || sx[0] == sx[1]) {
      throw Error(ErrorKind::IncompatibleScenario, "bad settings for the first PR party");
    }
  }
  for (int y : sy) {
    if (y < 0 || y >= s.settings(second) || s.outcomes(second, y) < 2 || sy[0] == sy[1]) {
      throw Error(ErrorKind::IncompatibleScenario, "bad settings for the second PR party");
    }
  }
  const Layout layout(s);
  RationalVector entries(layout.dimension());
  const Rational half(1, 2);
  for (std::size_t k = 0; k < layout.contexts(); ++k) {
    const auto& x = layout.context(k);
    const int u = role(sx, x[first]);
    const int v = role(sy, x[second]);
    std::vector<int> a(s.parties(), 0);
    if (u >= 0 && v >= 0) {
      for (int p = 0; p < 2; ++p) {
        a[first] = p;
        a[second] = p ^ (u & v);
        entries[layout.offset(k) + layout.local_index(k, a)] = half;
      }
    } else if (u >= 0 || v >= 0) {
      const std::size_t live = u >= 0 ? first : second;
      for (int p = 0; p < 2; ++p) {
        a[live] = p;
        entries[layout.offset(k) + layout.local_index(k, a)] = half;
      }
    } else {
      entries[layout.offset(k)] = 1;
    }
  }
  return Behaviour(s, std::move(entries));
}

Behaviour mixture(std::span<const Rational> weights, std::span<const Behaviour> behaviours) {
  if (weights.empty() || weights.size() != behaviours.size()) {
    throw Error(ErrorKind::BadWeights, "need one weight per behaviour");
  }
  Rational total = 0;
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw Error(ErrorKind::BadWeights, "negative weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw Error(ErrorKind::BadWeights, "weights sum to " + to_string(total));
  const Scenario& s = behaviours.front().scenario();
  RationalVector entries(behaviours.front().dimension());
  for (std::size_t k = 0; k < behaviours.size(); ++k) {
    if (!(behaviours[k].scenario() == s)) throw Error(ErrorKind::IncompatibleScenario, "mixed scenarios differ");
    if (sgn(weights[k]) == 0) continue;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (sgn(behaviours[k].entries()[j]) != 0) entries[j] += weights[k] * behaviours[k].entries()[j];
    }
  }
  return Behaviour(s, std::move(entries));
}

std::vector<Strategy> all_strategies(const Scenario& s) {
  std::vector<int> radix;
  for (std::size_t i = 0; i < s.parties(); ++i) {
    for (int x = 0; x < s.settings(i); ++x) radix.push_back(s.outcomes(i, x));
  }
  std::vector<Strategy> out;
  std::vector<int> digits(radix.size(), 0);
  do {
    Strategy st(s.parties());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < s.parties(); ++i) {
      for (int x = 0; x < s.settings(i); ++x) st[i].push_back(digits[pos++]);
    }
    out.push_back(std::move(st));
  } while (next_digits(digits, radix));
  return out;
}

}  // namespace lfpoly
