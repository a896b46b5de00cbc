#include "lfpoly/lhv.hpp"

#include <algorithm>
#include <string>

#include "lfpoly/error.hpp"
#include "lfpoly/polytopes.hpp"

namespace lfpoly {

std::vector<int> flatten(const Strategy& strategy) {
  std::vector<int> flat;
  for (const auto& row : strategy) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

Strategy unflatten(const std::vector<std::vector<int>>& shape, const std::vector<int>& flat) {
  Strategy out(shape.size());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    for (std::size_t x = 0; x < shape[i].size(); ++x) out[i].push_back(flat.at(pos++));
  }
  if (pos != flat.size()) throw Error(ErrorKind::DimensionMismatch, "assignment length does not match its shape");
  return out;
}

namespace {

void check_weights(const RationalVector& weights) {
  if (weights.empty()) throw Error(ErrorKind::BadWeights, "model without hidden variables");
  Rational total = 0;
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw Error(ErrorKind::BadWeights, "negative weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw Error(ErrorKind::BadWeights, "weights sum to " + to_string(total));
}

// Odometer over per-slot option lists.
bool next_choice(std::vector<std::size_t>& pick, const std::vector<std::size_t>& sizes) {
  for (std::size_t i = pick.size(); i-- > 0;) {
    if (++pick[i] < sizes[i]) return true;
    pick[i] = 0;
  }
  return false;
}

}  // namespace

void check_model(const StochasticLhvModel& m) {
  check_weights(m.weights);
  if (m.responses.size() != m.weights.size()) {
    throw Error(ErrorKind::BadWeights, "one response table per hidden variable required");
  }
  for (const auto& lambda : m.responses) {
    for (const auto& party : lambda) {
      for (const auto& dist : party) {
        Rational total = 0;
        for (const auto& p : dist) {
          if (sgn(p) < 0) throw Error(ErrorKind::BadWeights, "negative response probability");
          total += p;
        }
        if (total != 1) throw Error(ErrorKind::BadWeights, "response distribution sums to " + to_string(total));
      }
    }
  }
}

void check_model(const LhvModel& m) {
  check_weights(m.weights);
  if (m.strategies.size() != m.weights.size()) {
    throw Error(ErrorKind::BadWeights, "one strategy per hidden variable required");
  }
}

JointDistribution joint_from_stochastic(const StochasticLhvModel& m) {
  check_model(m);
  JointDistribution joint;
  for (const auto& party : m.responses.front()) {
    std::vector<int> counts;
    for (const auto& dist : party) counts.push_back(static_cast<int>(dist.size()));
    joint.shape.push_back(std::move(counts));
  }
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    if (sgn(m.weights[l]) == 0) continue;
    // Supports of each (party, setting) response, flattened party-major.
    std::vector<std::vector<std::pair<int, Rational>>> options;
    const auto& lambda = m.responses[l];
    if (lambda.size() != joint.shape.size()) throw Error(ErrorKind::IncompatibleScenario, "response shapes differ");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i].size() != joint.shape[i].size()) {
        throw Error(ErrorKind::IncompatibleScenario, "response shapes differ");
      }
      for (std::size_t x = 0; x < lambda[i].size(); ++x) {
        if (static_cast<int>(lambda[i][x].size()) != joint.shape[i][x]) {
          throw Error(ErrorKind::IncompatibleScenario, "response shapes differ");
        }
        std::vector<std::pair<int, Rational>> support;
        for (std::size_t a = 0; a < lambda[i][x].size(); ++a) {
          if (sgn(lambda[i][x][a]) != 0) support.emplace_back(static_cast<int>(a), lambda[i][x][a]);
        }
        options.push_back(std::move(support));
      }
    }
    std::vector<std::size_t> sizes;
    for (const auto& o : options) sizes.push_back(o.size());
    std::vector<std::size_t> pick(options.size(), 0);
    std::vector<int> key(options.size());
    do {
      Rational p = m.weights[l];
      for (std::size_t t = 0; t < options.size(); ++t) {
        key[t] = options[t][pick[t]].first;
        p *= options[t][pick[t]].second;
      }
      joint.probabilities[key] += p;
    } while (next_choice(pick, sizes));
  }
  return joint;
}

LhvModel deterministic_from_joint(const JointDistribution& j) {
  LhvModel model;
  for (const auto& [key, p] : j.probabilities) {
    if (sgn(p) < 0) throw Error(ErrorKind::BadWeights, "negative joint probability");
    if (sgn(p) == 0) continue;
    model.weights.push_back(p);
    model.strategies.push_back(unflatten(j.shape, key));
  }
  check_model(model);
  return model;
}

Behaviour behaviour_of(const LhvModel& m, const Scenario& s) {
  check_model(m);
  const Layout layout(s);
  RationalVector entries(layout.dimension());
  std::vector<int> a(s.parties());
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    try {
      check_strategy(s, m.strategies[l]);
    } catch (const Error& e) {
      throw Error(ErrorKind::IncompatibleScenario, std::string("strategy ") + std::to_string(l + 1) + ": " + e.what());
    }
    if (sgn(m.weights[l]) == 0) continue;
    for (std::size_t k = 0; k < layout.contexts(); ++k) {
      const auto& x = layout.context(k);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = m.strategies[l][i][static_cast<std::size_t>(x[i])];
      entries[layout.offset(k) + layout.local_index(k, a)] += m.weights[l];
    }
  }
  return Behaviour(s, std::move(entries));
}

Behaviour behaviour_of(const StochasticLhvModel& m, const Scenario& s) {
  check_model(m);
  for (const auto& lambda : m.responses) {
    bool fits = lambda.size() == s.parties();
    for (std::size_t i = 0; fits && i < s.parties(); ++i) {
      fits = lambda[i].size() == static_cast<std::size_t>(s.settings(i));
      for (int x = 0; fits && x < s.settings(i); ++x) {
        fits = lambda[i][static_cast<std::size_t>(x)].size() == static_cast<std::size_t>(s.outcomes(i, x));
      }
    }
    if (!fits) throw Error(ErrorKind::IncompatibleScenario, "response tables do not match the scenario");
  }
  const Layout layout(s);
  RationalVector entries(layout.dimension());
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    if (sgn(m.weights[l]) == 0) continue;
    const auto& lambda = m.responses[l];
    for (std::size_t k = 0; k < layout.contexts(); ++k) {
      const auto& x = layout.context(k);
      for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
        const auto a = layout.outcomes_at(k, local);
        Rational p = m.weights[l];
        for (std::size_t i = 0; i < a.size() && sgn(p) != 0; ++i) {
          p *= lambda[i][static_cast<std::size_t>(x[i])][static_cast<std::size_t>(a[i])];
        }
        entries[layout.offset(k) + local] += p;
      }
    }
  }
  return Behaviour(s, std::move(entries));
}

ModelCheck verify_model(const LhvModel& m, const Behaviour& b) {
  ModelCheck out;
  RationalVector produced;
  try {
    produced = behaviour_of(m, b.scenario()).entries();
  } catch (const Error&) {
    return out;
  }
  const auto& layout = b.layout();
  for (std::size_t j = 0; j < produced.size(); ++j) {
    if (produced[j] != b.entries()[j]) {
      auto [k, a] = layout.decode(j);
      out.mismatch = std::make_pair(layout.context(k), a);
      return out;
    }
  }
  out.ok = true;
  return out;
}

std::optional<std::size_t> lhv_hub(const Scenario& s) {
  const std::size_t n = s.parties();
  const auto& friends = s.friends();
  if (friends.size() + 1 == n) {
    for (auto f : friends) {
      if (s.settings(f) != 2) return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.is_friend(i)) return i;
    }
  }
  if (friends.size() == n) {
    std::optional<std::size_t> many;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.settings(i) <= 2) continue;
      if (many) return std::nullopt;
      many = i;
    }
    return many.value_or(0);
  }
  return std::nullopt;
}

JointDistribution product_joint(const Scenario& s, const Behaviour& conditional) {
  const auto hub = lhv_hub(s);
  if (!hub) throw Error(ErrorKind::WrongScenarioShape, "no product construction for " + s.describe());
  const Scenario restricted = restricted_public_scenario(s);
  if (conditional.scenario().outcome_table() != restricted.outcome_table()) {
    throw Error(ErrorKind::IncompatibleScenario, "conditional is not on the restricted public scenario");
  }
  if (!is_no_signalling(conditional)) {
    throw Error(ErrorKind::SignallingInput, "conditional must be no-signalling");
  }
  const std::size_t h = *hub;
  const std::size_t n = restricted.parties();
  const int settings = restricted.settings(h);
  std::vector<std::size_t> rest;
  std::vector<int> rest_radix;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == h) continue;
    if (restricted.settings(i) != 1) throw Error(ErrorKind::WrongScenarioShape, "non-hub party keeps two settings");
    rest.push_back(i);
    rest_radix.push_back(restricted.outcomes(i, 0));
  }

  JointDistribution joint;
  joint.shape = restricted.outcome_table();
  std::vector<int> a(n, 0);
  std::vector<int> x(n, 0);
  std::vector<int> a_rest(rest.size(), 0);
  do {
    for (std::size_t t = 0; t < rest.size(); ++t) a[rest[t]] = a_rest[t];
    // The rest marginal does not depend on the hub setting (no-signalling).
    Rational marginal = 0;
    x[h] = 0;
    for (int v = 0; v < restricted.outcomes(h, 0); ++v) {
      a[h] = v;
      marginal += conditional(x, a);
    }
    if (sgn(marginal) == 0) continue;  // zero divisor: the whole slice is set to zero

    std::vector<std::vector<std::pair<int, Rational>>> options(static_cast<std::size_t>(settings));
    for (int r = 0; r < settings; ++r) {
      x[h] = r;
      for (int v = 0; v < restricted.outcomes(h, r); ++v) {
        a[h] = v;
        const Rational& p = conditional(x, a);
        if (sgn(p) != 0) options[static_cast<std::size_t>(r)].emplace_back(v, p);
      }
    }
    Rational divisor = 1;
    for (int r = 1; r < settings; ++r) divisor *= marginal;
    std::vector<std::size_t> sizes;
    for (const auto& o : options) sizes.push_back(o.size());
    std::vector<std::size_t> pick(options.size(), 0);
    do {
      Strategy st(n);
      for (std::size_t t = 0; t < rest.size(); ++t) st[rest[t]] = {a_rest[t]};
      Rational p = 1;
      for (std::size_t r = 0; r < options.size(); ++r) {
        st[h].push_back(options[r][pick[r]].first);
        p *= options[r][pick[r]].second;
      }
      joint.probabilities[flatten(st)] += p / divisor;
    } while (next_choice(pick, sizes));
  } while ([&] {
    for (std::size_t i = a_rest.size(); i-- > 0;) {
      if (++a_rest[i] < rest_radix[i]) return true;
      a_rest[i] = 0;
    }
    return false;
  }());
  return joint;
}

LhvModel lf_to_lhv(const LfModel& model, const Scenario& s) {
  if (!(model.scenario == s)) throw Error(ErrorKind::IncompatibleScenario, "LF model belongs to another scenario");
  if (!lhv_hub(s)) {
    throw Error(ErrorKind::WrongScenarioShape, "LHV extraction needs one friendless party with two-setting friends, "
                                               "or all friends with at most one many-setting party; got " +
                                                   s.describe());
  }
  const Behaviour target = lf_behaviour(model);
  const Scenario restricted = restricted_public_scenario(s);
  std::vector<std::size_t> ordinal(s.parties(), 0);
  for (std::size_t f = 0; f < s.friends().size(); ++f) ordinal[s.friends()[f]] = f;

  std::map<std::vector<int>, Rational> merged;
  for (const auto& branch : model.branches) {
    if (sgn(branch.weight) == 0) continue;
    const auto joint = product_joint(s, branch.conditional);
    Rational total = 0;
    for (const auto& [key, p] : joint.probabilities) total += p;
    if (total != 1) {
      throw Error(ErrorKind::VerificationFailure, "product joint sums to " + to_string(total));
    }
    for (const auto& [key, p] : joint.probabilities) {
      const Strategy inner = unflatten(joint.shape, key);
      Strategy full(s.parties());
      for (std::size_t i = 0; i < s.parties(); ++i) {
        if (s.is_friend(i)) {
          // The query setting reveals the friend's record.
          full[i].push_back(branch.friend_outcomes[ordinal[i]]);
        }
        full[i].insert(full[i].end(), inner[i].begin(), inner[i].end());
      }
      merged[flatten(full)] += branch.weight * p;
    }
  }
  std::vector<std::vector<int>> shape = s.outcome_table();
  LhvModel out;
  for (const auto& [key, w] : merged) {
    out.weights.push_back(w);
    out.strategies.push_back(unflatten(shape, key));
  }
  const auto check = verify_model(out, target);
  if (!check.ok) {
    throw Error(ErrorKind::VerificationFailure, "constructed LHV model does not reproduce the LF behaviour");
  }
  return out;
}

}  // namespace lfpoly
