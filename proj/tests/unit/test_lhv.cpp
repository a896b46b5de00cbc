#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "lfpoly/error.hpp"
#include "lfpoly/lhv.hpp"
#include "lfpoly/polytopes.hpp"

using namespace lfpoly;

namespace {

const Scenario chsh = Scenario::uniform({2, 2}, 2);

StochasticLhvModel random_model(std::mt19937_64& rng, std::size_t lambdas) {
  StochasticLhvModel m;
  m.weights = oracle::random_weights(rng, lambdas);
  for (std::size_t l = 0; l < lambdas; ++l) {
    std::vector<std::vector<RationalVector>> per_party;
    for (int i = 0; i < 2; ++i) {
      std::vector<RationalVector> settings;
      for (int x = 0; x < 2; ++x) settings.push_back(oracle::random_weights(rng, 2));
      per_party.push_back(settings);
    }
    m.responses.push_back(per_party);
  }
  return m;
}

Rational total(const JointDistribution& j) {
  Rational t = 0;
  for (const auto& [k, v] : j.probabilities) t += v;
  return t;
}

}  // namespace

TEST_CASE("joint of simple models") {
  StochasticLhvModel det;
  det.weights = {1};
  det.responses = {{{{0, 1}, {1, 0}}, {{1, 0}, {1, 0}}}};
  const auto j = joint_from_stochastic(det);
  REQUIRE(j.probabilities.size() == 1);
  CHECK(j.probabilities.begin()->first == std::vector<int>{1, 0, 0, 0});

  StochasticLhvModel flat;
  flat.weights = {1};
  const RationalVector half{Rational(1, 2), Rational(1, 2)};
  flat.responses = {{{half, half}, {half, half}}};
  const auto u = joint_from_stochastic(flat);
  CHECK(u.probabilities.size() == 16);
  for (const auto& [k, v] : u.probabilities) CHECK(v == Rational(1, 16));
  CHECK(behaviour_of(flat, chsh) == uniform(chsh));
}

TEST_CASE("joint marginals equal the model behaviour") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_model(rng, 2);
    const auto j = joint_from_stochastic(m);
    CHECK(total(j) == 1);
    // Sum the joint by hand over the settings not measured.
    const auto b = behaviour_of(m, chsh);
    const Layout layout(chsh);
    RationalVector e(layout.dimension());
    for (const auto& [flat, p] : j.probabilities) {
      const auto st = unflatten(j.shape, flat);
      for (std::size_t k = 0; k < layout.contexts(); ++k) {
        const auto& x = layout.context(k);
        const std::vector<int> a{st[0][static_cast<std::size_t>(x[0])], st[1][static_cast<std::size_t>(x[1])]};
        e[layout.index(x, a)] += p;
      }
    }
    CHECK(e == b.entries());
    const auto det = deterministic_from_joint(j);
    CHECK(behaviour_of(det, chsh) == b);
    CHECK(membership_bell(b).member);
  }
}

TEST_CASE("deterministic model from small joints") {
  JointDistribution point{{{2, 2}, {2, 2}}, {{{0, 1, 1, 0}, 1}}};
  const auto m = deterministic_from_joint(point);
  CHECK(m.weights == RationalVector{1});
  CHECK(m.strategies.front() == Strategy{{0, 1}, {1, 0}});

  JointDistribution two{{{2, 2}, {2, 2}}, {{{0, 0, 0, 0}, Rational(1, 2)}, {{1, 1, 1, 1}, Rational(1, 2)}}};
  const auto m2 = deterministic_from_joint(two);
  CHECK(m2.weights == RationalVector{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("model checks") {
  const Strategy st{{0, 1}, {1, 1}};
  const auto d = deterministic(chsh, st);
  CHECK(verify_model(LhvModel{{1}, {st}}, d).ok);
  LhvModel off{{Rational(1, 2), Rational(1, 2)}, {st, Strategy{{1, 1}, {1, 1}}}};
  const auto c = verify_model(off, d);
  CHECK_FALSE(c.ok);
  CHECK(c.mismatch.has_value());
  CHECK_THROWS_AS(check_model(LhvModel{{Rational(1, 2)}, {st}}), Error);
}

TEST_CASE("hub selection") {
  CHECK(lhv_hub(Scenario::uniform({2, 4}, 2, {0})) == std::optional<std::size_t>{1});
  CHECK(lhv_hub(Scenario::uniform({2, 2, 2}, 2, {0, 1, 2})).has_value());
  CHECK_FALSE(lhv_hub(Scenario::uniform({3, 3}, 2, {0, 1})).has_value());
  CHECK_FALSE(lhv_hub(chsh).has_value());
}

TEST_CASE("single-context collapse with every party a friend") {
  const Scenario s = Scenario::uniform({2, 2, 2}, 2, {0, 1, 2});
  const Scenario r = restricted_public_scenario(s);
  std::mt19937_64 rng(9);
  const auto w = oracle::random_weights(rng, 8);
  const Behaviour cond(r, w);
  const auto j = product_joint(s, cond);
  CHECK(total(j) == 1);
  for (const auto& [flat, p] : j.probabilities) {
    const Layout layout(r);
    CHECK(p == cond.entries()[layout.index(std::vector<int>{0, 0, 0}, flat)]);
  }
}

TEST_CASE("zero divisor rule") {
  const Scenario minimal = Scenario::uniform({2, 2}, 2, {0});
  const Scenario r = restricted_public_scenario(minimal);
  // Party 1 always answers 0 in the restricted scenario, so P(a_1 = 1) = 0.
  const Layout layout(r);
  RationalVector e(layout.dimension());
  e[layout.index(std::vector<int>{0, 0}, std::vector<int>{0, 0})] = Rational(1, 3);
  e[layout.index(std::vector<int>{0, 0}, std::vector<int>{0, 1})] = Rational(2, 3);
  e[layout.index(std::vector<int>{0, 1}, std::vector<int>{0, 0})] = Rational(1, 4);
  e[layout.index(std::vector<int>{0, 1}, std::vector<int>{0, 1})] = Rational(3, 4);
  const Behaviour cond(r, e);
  const auto j = product_joint(minimal, cond);
  CHECK(total(j) == 1);

  const LfModel model{minimal, {LfBranch{{1}, 1, cond}}};
  const auto lhv = lf_to_lhv(model, minimal);
  CHECK(verify_model(lhv, lf_behaviour(model)).ok);
}

TEST_CASE("LF to LHV on sampled behaviours") {
  std::mt19937_64 rng(21);
  for (const Scenario& s : {Scenario::uniform({2, 2}, 2, {0}), Scenario::uniform({2, 3}, 2, {0}),
                            Scenario::uniform({2, 2, 2}, 2, {0, 1})}) {
    const auto v = lf_vertices(s);
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
      const auto w = oracle::random_weights(rng, 3);
      RationalVector e(v.dimension());
      for (std::size_t t = 0; t < 3; ++t) {
        const auto& p = v[pick(rng)];
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += w[t] * p[k];
      }
      const Behaviour b(s, e);
      const auto m = membership_lf(b);
      REQUIRE(m.member);
      CHECK(verify_model(lf_to_lhv(*m.model, s), b).ok);
    }
  }
  CHECK_THROWS_AS(lf_to_lhv(LfModel{chsh, {}}, chsh), Error);
}
