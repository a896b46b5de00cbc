#pragma once

// Exact behaviour tables p(a|x).
//
// Layout: contexts x = (x_0, ..., x_{N-1}) in mixed-radix order with party 0
// most significant; inside a context, outcome strings a in the same order.
// Everything is 0-based in the C++ API.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lfpoly/rational.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly {

class Layout {
 public:
  explicit Layout(const Scenario& s);

  std::size_t parties() const { return settings_.size(); }
  std::size_t contexts() const { return contexts_.size(); }
  std::size_t dimension() const { return dimension_; }

  const std::vector<int>& context(std::size_t k) const { return contexts_[k]; }
  std::size_t context_index(std::span<const int> settings) const;
  std::size_t offset(std::size_t k) const { return offsets_[k]; }
  std::size_t outcome_count(std::size_t k) const { return offsets_[k + 1] - offsets_[k]; }

  /// Flat index of p(outcomes | settings).
  std::size_t index(std::span<const int> settings, std::span<const int> outcomes) const;
  std::size_t local_index(std::size_t k, std::span<const int> outcomes) const;
  std::vector<int> outcomes_at(std::size_t k, std::size_t local) const;

  /// Context and outcome string of a flat index.
  std::pair<std::size_t, std::vector<int>> decode(std::size_t flat) const;

 private:
  std::vector<std::vector<int>> outcomes_;
  std::vector<int> settings_;
  std::vector<std::vector<int>> contexts_;
  std::vector<std::size_t> offsets_;
  std::size_t dimension_ = 0;
};

class Behaviour {
 public:
  /// Throws DimensionMismatch, NegativeEntry or NormalizationFailure.
  Behaviour(Scenario s, RationalVector entries);

  const Scenario& scenario() const { return scenario_; }
  const Layout& layout() const { return layout_; }
  const RationalVector& entries() const { return entries_; }
  std::size_t dimension() const { return entries_.size(); }

  const Rational& operator()(std::span<const int> settings, std::span<const int> outcomes) const {
    return entries_[layout_.index(settings, outcomes)];
  }

  bool operator==(const Behaviour& other) const {
    return scenario_ == other.scenario_ && entries_ == other.entries_;
  }

 private:
  Scenario scenario_;
  Layout layout_;
  RationalVector entries_;
};

/// `context` and `other` differ only in the setting of `party`, and the
/// marginal of the remaining parties differs between them.
struct SignallingWitness {
  std::size_t party = 0;
  std::vector<int> context;
  std::vector<int> other;
};

std::optional<SignallingWitness> signalling_witness(const Behaviour& b);
bool is_no_signalling(const Behaviour& b);

/// Rows r with r . p = 0 for every no-signalling table (not independent).
std::vector<RationalVector> ns_equalities(const Scenario& s);

/// Sums out the listed parties, their settings fixed to 0. Throws SignallingInput.
Behaviour marginalize_parties(const Behaviour& b, const std::vector<std::size_t>& excluded);

/// Keeps `kept[i]` (distinct, in the given order) for each party i. A friend
/// stays a friend only if its query setting 0 is kept first.
Behaviour restrict_settings(const Behaviour& b, const std::vector<std::vector<int>>& kept);
Scenario restrict_scenario(const Scenario& s, const std::vector<std::vector<int>>& kept);

/// Old party i becomes party parties[i]; its setting x becomes settings[i][x];
/// outcome a of that setting becomes outcomes[i][x][a].
struct Relabeling {
  std::vector<std::size_t> parties;
  std::vector<std::vector<int>> settings;
  std::vector<std::vector<std::vector<int>>> outcomes;
};

Relabeling identity_relabeling(const Scenario& s);
Relabeling inverse(const Relabeling& r);
Scenario relabel(const Scenario& s, const Relabeling& r);
Behaviour relabel(const Behaviour& b, const Relabeling& r);

/// strategy[party][setting] = outcome
using Strategy = std::vector<std::vector<int>>;

void check_strategy(const Scenario& s, const Strategy& strategy);
Behaviour deterministic(const Scenario& s, const Strategy& strategy);
Behaviour uniform(const Scenario& s);
/// Bipartite, two settings and two outcomes each: p(ab|xy) = 1/2 iff a xor b = x*y.
Behaviour pr_box(const Scenario& s);
/// PR correlations between parties `first` and `second` on settings
/// {sx[0], sx[1]} x {sy[0], sy[1]} using outcomes 0/1; every other party and
/// every other setting outputs 0. No-signalling in any scenario.
Behaviour embedded_pr_box(const Scenario& s, std::size_t first, std::size_t second, std::array<int, 2> sx,
                          std::array<int, 2> sy);
Behaviour mixture(std::span<const Rational> weights, std::span<const Behaviour> behaviours);

/// Every strategy of the scenario, in mixed-radix order over (party, setting).
std::vector<Strategy> all_strategies(const Scenario& s);

}  // namespace lfpoly
