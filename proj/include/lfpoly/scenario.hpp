#pragma once

// Canonical Local Friendliness scenarios and the syntactic classification of
// their LF polytopes.
//
// Indexing convention (C++ API): parties, settings and outcomes are 0-based.
// Setting 0 of a friend party is the query measurement, whose outcome equals
// the friend's record. The JSON formats use 1-based indices throughout.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lfpoly {

/// Unvalidated scenario description, 1-based friend indices, as read from JSON.
struct ScenarioSpec {
  int parties = 0;
  std::vector<int> friends;
  std::vector<int> settings;
  std::vector<std::vector<int>> outcomes;
};

class Scenario {
 public:
  /// Strict validation of a user scenario. Throws NonTrivialityViolation or BadFriendIndex.
  static Scenario from_spec(const ScenarioSpec& spec);

  /// Every setting of every party has `outcomes` outcomes; `friends` are 0-based.
  static Scenario uniform(std::vector<int> settings, int outcomes, std::vector<std::size_t> friends = {});

  /// Scenario built from explicit tables, used by derived constructions. Only
  /// positivity is enforced; `derived` relaxes the N >= 2, m >= 2 requirements.
  static Scenario make(std::vector<std::vector<int>> outcomes, std::vector<std::size_t> friends,
                       bool derived, std::vector<std::vector<int>> setting_origin = {});

  std::size_t parties() const { return outcomes_.size(); }
  int settings(std::size_t party) const { return static_cast<int>(outcomes_[party].size()); }
  int outcomes(std::size_t party, int setting) const { return outcomes_[party][static_cast<std::size_t>(setting)]; }
  const std::vector<std::vector<int>>& outcome_table() const { return outcomes_; }
  const std::vector<std::size_t>& friends() const { return friends_; }
  bool is_friend(std::size_t party) const;

  /// Derived scenarios (restrictions, marginals) may carry single-setting parties.
  bool derived() const { return derived_; }

  /// Setting index in the scenario this one was derived from (identity otherwise).
  int original_setting(std::size_t party, int setting) const;
  const std::vector<std::vector<int>>& setting_origin() const { return setting_origin_; }

  /// Same public scenario with a different friend set (strictly validated).
  Scenario with_friends(std::vector<std::size_t> friends) const;

  ScenarioSpec to_spec() const;
  std::string describe() const;

  bool operator==(const Scenario& other) const {
    return outcomes_ == other.outcomes_ && friends_ == other.friends_;
  }

 private:
  Scenario() = default;

  std::vector<std::vector<int>> outcomes_;  // outcomes_[party][setting]
  std::vector<std::size_t> friends_;        // sorted, 0-based
  bool derived_ = false;
  std::vector<std::vector<int>> setting_origin_;
};

/// validate_scenario: alias of Scenario::from_spec.
Scenario validate_scenario(const ScenarioSpec& spec);

/// Deletes the query setting of every friend (settings 1..m-1 become 0..m-2)
/// and drops the friend set. The renumbering is recorded on the result.
Scenario restricted_public_scenario(const Scenario& s);

enum class Classification { TrivialNoSignalling, EqualsBell, StrictIntermediate };

/// Which syntactic condition decided the classification.
enum class ClassificationRule {
  NoFriends,                 // LF = NS
  SingleFriendlessParty,     // |I_F| = N-1 and every friend has two settings
  AllFriendsOneManySetting,  // every party a friend, at most one with more than two settings
  TwoOrMoreFriendless,       // at least two parties without a friend
  SeveralManySetting,        // two or more parties with three or more settings
  ManySettingFriend,         // |I_F| = N-1, the only many-setting party has a friend
};

struct ClassificationResult {
  Classification tag;
  ClassificationRule rule;
};

ClassificationResult classify(const Scenario& s);

std::string_view to_string(Classification c);
std::string_view to_string(ClassificationRule r);
std::string_view describe(ClassificationRule r);

enum class SetRelationTag { Equal, LeftStrictSubset, RightStrictSubset, Incomparable };

/// Relation between LF(public, left friends) and LF(public, right friends).
struct SetRelation {
  SetRelationTag tag;
  bool both_equal_bell = false;
};

SetRelation compare_friend_sets(const Scenario& public_scenario, const std::vector<std::size_t>& left,
                                const std::vector<std::size_t>& right);

std::string_view to_string(SetRelationTag t);

enum class QuantumRelation { QuantumInsideLF, LFInsideQuantum, MutuallyNoninclusive };

QuantumRelation quantum_relation(const Scenario& s);

std::string_view to_string(QuantumRelation q);

}  // namespace lfpoly
