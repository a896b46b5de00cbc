#include "lfpoly/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "lfpoly/error.hpp"

namespace lfpoly {

namespace {

void check_friends(std::vector<std::size_t>& friends, std::size_t parties) {
  std::sort(friends.begin(), friends.end());
  friends.erase(std::unique(friends.begin(), friends.end()), friends.end());
  for (auto f : friends) {
    if (f >= parties) {
      throw Error(ErrorKind::BadFriendIndex,
                  "friend index " + std::to_string(f + 1) + " outside 1.." + std::to_string(parties));
    }
  }
}

void check_nontrivial(const std::vector<std::vector<int>>& outcomes) {
  if (outcomes.size() < 2) throw Error(ErrorKind::NonTrivialityViolation, "at least two parties required");
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].size() < 2) {
      throw Error(ErrorKind::NonTrivialityViolation,
                  "party " + std::to_string(i + 1) + " needs at least two settings");
    }
    for (std::size_t x = 0; x < outcomes[i].size(); ++x) {
      if (outcomes[i][x] < 2) {
        throw Error(ErrorKind::NonTrivialityViolation, "party " + std::to_string(i + 1) + ", setting " +
                                                           std::to_string(x + 1) +
                                                           " needs at least two outcomes");
      }
    }
  }
}

}  // namespace

Scenario Scenario::from_spec(const ScenarioSpec& spec) {
  if (spec.parties < 2) throw Error(ErrorKind::NonTrivialityViolation, "at least two parties required");
  const auto n = static_cast<std::size_t>(spec.parties);
  if (spec.settings.size() != n) {
    throw Error(ErrorKind::ParseError, "settings list length differs from the party count");
  }
  std::vector<std::vector<int>> outcomes(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.settings[i] < 2) {
      throw Error(ErrorKind::NonTrivialityViolation,
                  "party " + std::to_string(i + 1) + " needs at least two settings");
    }
    if (spec.outcomes.empty()) {
      outcomes[i].assign(static_cast<std::size_t>(spec.settings[i]), 2);
      continue;
    }
    if (spec.outcomes.size() != n || spec.outcomes[i].size() != static_cast<std::size_t>(spec.settings[i])) {
      throw Error(ErrorKind::ParseError, "outcome table shape differs from the settings list");
    }
    outcomes[i] = spec.outcomes[i];
  }
  check_nontrivial(outcomes);
  std::vector<std::size_t> friends;
  for (int f : spec.friends) {
    if (f < 1 || f > spec.parties) {
      throw Error(ErrorKind::BadFriendIndex,
                  "friend index " + std::to_string(f) + " outside 1.." + std::to_string(spec.parties));
    }
    friends.push_back(static_cast<std::size_t>(f - 1));
  }
  return make(std::move(outcomes), std::move(friends), false);
}

Scenario Scenario::uniform(std::vector<int> settings, int outcomes, std::vector<std::size_t> friends) {
  std::vector<std::vector<int>> table;
  for (int m : settings) table.emplace_back(static_cast<std::size_t>(std::max(m, 0)), outcomes);
  check_nontrivial(table);
  return make(std::move(table), std::move(friends), false);
}

Scenario Scenario::make(std::vector<std::vector<int>> outcomes, std::vector<std::size_t> friends, bool derived,
                        std::vector<std::vector<int>> setting_origin) {
  if (outcomes.empty()) throw Error(ErrorKind::DegenerateScenario, "scenario without parties");
  for (const auto& party : outcomes) {
    if (party.empty()) throw Error(ErrorKind::DegenerateScenario, "party without settings");
    for (int o : party) {
      if (o < 1) throw Error(ErrorKind::DegenerateScenario, "setting without outcomes");
    }
  }
  if (!derived) check_nontrivial(outcomes);
  check_friends(friends, outcomes.size());
  if (setting_origin.empty()) {
    for (const auto& party : outcomes) {
      std::vector<int> identity(party.size());
      for (std::size_t x = 0; x < identity.size(); ++x) identity[x] = static_cast<int>(x);
      setting_origin.push_back(std::move(identity));
    }
  }
  Scenario s;
  s.outcomes_ = std::move(outcomes);
  s.friends_ = std::move(friends);
  s.derived_ = derived;
  s.setting_origin_ = std::move(setting_origin);
  return s;
}

bool Scenario::is_friend(std::size_t party) const {
  return std::binary_search(friends_.begin(), friends_.end(), party);
}

int Scenario::original_setting(std::size_t party, int setting) const {
  return setting_origin_[party][static_cast<std::size_t>(setting)];
}

Scenario Scenario::with_friends(std::vector<std::size_t> friends) const {
  return make(outcomes_, std::move(friends), derived_, setting_origin_);
}

ScenarioSpec Scenario::to_spec() const {
  ScenarioSpec spec;
  spec.parties = static_cast<int>(parties());
  for (auto f : friends_) spec.friends.push_back(static_cast<int>(f) + 1);
  for (const auto& party : outcomes_) spec.settings.push_back(static_cast<int>(party.size()));
  spec.outcomes = outcomes_;
  return spec;
}

std::string Scenario::describe() const {
  std::ostringstream out;
  out << "N=" << parties() << " friends={";
  for (std::size_t k = 0; k < friends_.size(); ++k) out << (k ? "," : "") << friends_[k] + 1;
  out << "} m=(";
  for (std::size_t i = 0; i < parties(); ++i) out << (i ? "," : "") << settings(i);
  out << ")";
  bool binary = true;
  for (const auto& party : outcomes_) {
    binary = binary && std::all_of(party.begin(), party.end(), [](int o) { return o == 2; });
  }
  if (binary) {
    out << " o=2";
  } else {
    out << " o=[";
    for (std::size_t i = 0; i < parties(); ++i) {
      out << (i ? "," : "") << "(";
      for (std::size_t x = 0; x < outcomes_[i].size(); ++x) out << (x ? "," : "") << outcomes_[i][x];
      out << ")";
    }
    out << "]";
  }
  return out.str();
}

Scenario validate_scenario(const ScenarioSpec& spec) { return Scenario::from_spec(spec); }

Scenario restricted_public_scenario(const Scenario& s) {
  std::vector<std::vector<int>> outcomes;
  std::vector<std::vector<int>> origin;
  for (std::size_t i = 0; i < s.parties(); ++i) {
    const bool drop_query = s.is_friend(i);
    std::vector<int> kept_outcomes;
    std::vector<int> kept_origin;
    for (int x = drop_query ? 1 : 0; x < s.settings(i); ++x) {
      kept_outcomes.push_back(s.outcomes(i, x));
      kept_origin.push_back(s.original_setting(i, x));
    }
    outcomes.push_back(std::move(kept_outcomes));
    origin.push_back(std::move(kept_origin));
  }
  return Scenario::make(std::move(outcomes), {}, true, std::move(origin));
}

ClassificationResult classify(const Scenario& s) {
  const std::size_t n = s.parties();
  const std::size_t f = s.friends().size();
  if (f == 0) return {Classification::TrivialNoSignalling, ClassificationRule::NoFriends};

  const bool friends_two = std::all_of(s.friends().begin(), s.friends().end(),
                                       [&](std::size_t i) { return s.settings(i) == 2; });
  std::size_t many = 0;
  for (std::size_t i = 0; i < n; ++i) many += s.settings(i) >= 3 ? 1 : 0;

  if (f + 1 == n && friends_two) return {Classification::EqualsBell, ClassificationRule::SingleFriendlessParty};
  if (f == n && many <= 1) return {Classification::EqualsBell, ClassificationRule::AllFriendsOneManySetting};
  if (n - f >= 2) return {Classification::StrictIntermediate, ClassificationRule::TwoOrMoreFriendless};
  if (many >= 2) return {Classification::StrictIntermediate, ClassificationRule::SeveralManySetting};
  return {Classification::StrictIntermediate, ClassificationRule::ManySettingFriend};
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::TrivialNoSignalling: return "TrivialNoSignalling";
    case Classification::EqualsBell: return "EqualsBell";
    case Classification::StrictIntermediate: return "StrictIntermediate";
  }
  return "";
}

std::string_view to_string(ClassificationRule r) {
  switch (r) {
    case ClassificationRule::NoFriends: return "no-friends";
    case ClassificationRule::SingleFriendlessParty: return "single-friendless-party";
    case ClassificationRule::AllFriendsOneManySetting: return "all-friends";
    case ClassificationRule::TwoOrMoreFriendless: return "two-or-more-friendless";
    case ClassificationRule::SeveralManySetting: return "several-many-setting";
    case ClassificationRule::ManySettingFriend: return "many-setting-friend";
  }
  return "";
}

std::string_view describe(ClassificationRule r) {
  switch (r) {
    case ClassificationRule::NoFriends:
      return "no party has a friend, so LF coincides with the no-signalling polytope";
    case ClassificationRule::SingleFriendlessParty:
      return "exactly one party lacks a friend and every friend has two settings";
    case ClassificationRule::AllFriendsOneManySetting:
      return "every party has a friend and at most one party has more than two settings";
    case ClassificationRule::TwoOrMoreFriendless:
      return "at least two parties lack a friend";
    case ClassificationRule::SeveralManySetting:
      return "two or more parties have three or more settings";
    case ClassificationRule::ManySettingFriend:
      return "one party lacks a friend, but the only party with three or more settings has one";
  }
  return "";
}

SetRelation compare_friend_sets(const Scenario& public_scenario, const std::vector<std::size_t>& left,
                                const std::vector<std::size_t>& right) {
  const Scenario lhs = public_scenario.with_friends(left);
  const Scenario rhs = public_scenario.with_friends(right);
  const auto& lf = lhs.friends();
  const auto& rf = rhs.friends();
  const bool left_bell = classify(lhs).tag == Classification::EqualsBell;
  const bool right_bell = classify(rhs).tag == Classification::EqualsBell;
  const bool both_bell = left_bell && right_bell;

  if (lf == rf) return {SetRelationTag::Equal, both_bell};
  const bool right_in_left = std::includes(lf.begin(), lf.end(), rf.begin(), rf.end());
  const bool left_in_right = std::includes(rf.begin(), rf.end(), lf.begin(), lf.end());
  if (both_bell) return {SetRelationTag::Equal, true};
  // More friends, smaller polytope.
  if (right_in_left) return {SetRelationTag::LeftStrictSubset, false};
  if (left_in_right) return {SetRelationTag::RightStrictSubset, false};
  // Incomparable friend sets.
  if (left_bell) return {SetRelationTag::LeftStrictSubset, false};
  if (right_bell) return {SetRelationTag::RightStrictSubset, false};
  return {SetRelationTag::Incomparable, false};
}

std::string_view to_string(SetRelationTag t) {
  switch (t) {
    case SetRelationTag::Equal: return "Equal";
    case SetRelationTag::LeftStrictSubset: return "LeftStrictSubset";
    case SetRelationTag::RightStrictSubset: return "RightStrictSubset";
    case SetRelationTag::Incomparable: return "Incomparable";
  }
  return "";
}

QuantumRelation quantum_relation(const Scenario& s) {
  switch (classify(s).tag) {
    case Classification::TrivialNoSignalling: return QuantumRelation::QuantumInsideLF;
    case Classification::EqualsBell: return QuantumRelation::LFInsideQuantum;
    case Classification::StrictIntermediate: return QuantumRelation::MutuallyNoninclusive;
  }
  return QuantumRelation::MutuallyNoninclusive;
}

std::string_view to_string(QuantumRelation q) {
  switch (q) {
    case QuantumRelation::QuantumInsideLF: return "QuantumInsideLF";
    case QuantumRelation::LFInsideQuantum: return "LFInsideQuantum";
    case QuantumRelation::MutuallyNoninclusive: return "MutuallyNoninclusive";
  }
  return "";
}

}  // namespace lfpoly
