#include <doctest.h>

#include <random>
#include <set>

#include "../oracles.hpp"
#include "lfpoly/error.hpp"
#include "lfpoly/polytopes.hpp"

using namespace lfpoly;

namespace {

const Scenario chsh = Scenario::uniform({2, 2}, 2);
const Scenario minimal = Scenario::uniform({2, 2}, 2, {0});
const Scenario two_friends = Scenario::uniform({3, 3}, 2, {0, 1});

std::set<RationalVector> as_set(const std::vector<RationalVector>& v) { return {v.begin(), v.end()}; }

Behaviour random_mixture(const Scenario& s, const geometry::VRep& v, std::mt19937_64& rng, std::size_t terms) {
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  const auto w = oracle::random_weights(rng, terms);
  RationalVector e(v.dimension());
  for (std::size_t t = 0; t < terms; ++t) {
    const auto& p = v[pick(rng)];
    for (std::size_t j = 0; j < e.size(); ++j) e[j] += w[t] * p[j];
  }
  return Behaviour(s, e);
}

}  // namespace

TEST_CASE("Bell vertices") {
  const auto v = bell_vertices(chsh);
  CHECK(v.size() == 16);
  CHECK(bell_vertices(Scenario::uniform({2, 2, 2}, 2)).size() == 64);
  for (const auto& p : v.points()) CHECK(is_no_signalling(Behaviour(chsh, p)));

  const oracle::Table t{chsh.outcome_table()};
  std::vector<RationalVector> ref;
  for (const auto& st : oracle::strategies(t)) ref.push_back(oracle::deterministic_point(t, st));
  CHECK(as_set(v.points()) == as_set(ref));
}

TEST_CASE("NS vertices of the CHSH scenario") {
  const auto v = ns_vertices(chsh);
  CHECK(v.size() == 24);
  const oracle::Table t{chsh.outcome_table()};
  std::vector<RationalVector> ref;
  for (const auto& st : oracle::strategies(t)) ref.push_back(oracle::deterministic_point(t, st));
  for (const auto& pr : oracle::pr_family()) ref.push_back(pr);
  CHECK(as_set(v.points()) == as_set(ref));
  int nonlocal = 0;
  for (const auto& p : v.points()) {
    CHECK(oracle::is_ns_vertex(t, p));
    if (!oracle::chsh_bell_local(p)) ++nonlocal;
    CHECK(membership_bell(Behaviour(chsh, p)).member == oracle::chsh_bell_local(p));
  }
  CHECK(nonlocal == 8);
  for (const auto& p : bell_vertices(chsh).points()) CHECK(geometry::in_convex_hull(p, v).member);
}

TEST_CASE("NS vertices with a one-setting party") {
  const Scenario r = restricted_public_scenario(minimal);
  const auto v = ns_vertices(r);
  CHECK(v.size() == 8);
  CHECK(geometry::hull_equal(v, bell_vertices(r)));
  const oracle::Table t{r.outcome_table()};
  for (const auto& p : v.points()) CHECK(oracle::is_ns_vertex(t, p));

  const Scenario mixed = Scenario::make({{2}, {2, 2}, {2, 2}}, {}, true);
  const auto w = ns_vertices(mixed);
  CHECK(w.size() == 48);
  for (const auto& p : w.points()) CHECK(oracle::is_ns_vertex(oracle::Table{mixed.outcome_table()}, p));
}

TEST_CASE("LF vertices") {
  CHECK(lf_vertices(chsh).same_points(ns_vertices(chsh)));
  const auto v = lf_vertices(minimal);
  CHECK(v.size() == 16);
  CHECK(lf_extreme_count(minimal) == 16);
  CHECK(lf_extreme_count(chsh) == 24);
  CHECK(geometry::hull_equal(v, bell_vertices(minimal)));

  const auto g = lf_vertices(two_friends);
  CHECK(g.size() == 96);
  CHECK(geometry::first_point_outside(g, bell_vertices(two_friends)).has_value());
  for (const auto& p : g.points()) CHECK(is_no_signalling(Behaviour(two_friends, p)));
}

TEST_CASE("lf_point enforces the query rule") {
  const Scenario r = restricted_public_scenario(minimal);
  const auto cond = deterministic(r, {{1}, {0, 1}});
  const auto p = Behaviour(minimal, lf_point(minimal, {0}, cond));
  // Query setting: party 1 outputs c = 0 whatever the conditional says.
  CHECK(p(std::vector<int>{0, 0}, std::vector<int>{0, 0}) == 1);
  CHECK(p(std::vector<int>{1, 1}, std::vector<int>{1, 1}) == 1);
  CHECK_THROWS_AS(lf_point(minimal, {2}, cond), Error);
}

TEST_CASE("Bell membership certificates") {
  for (const auto& st : all_strategies(chsh)) {
    const auto m = membership_bell(deterministic(chsh, st));
    REQUIRE(m.member);
    CHECK(m.model->weights == RationalVector{1});
    CHECK(m.model->strategies.front() == st);
  }
  const auto pr = membership_bell(pr_box(chsh));
  CHECK_FALSE(pr.member);
  CHECK(verify_bell_certificate(pr_box(chsh), pr));
  // The separator is a multiple of a CHSH facet up to the normalization rows.
  CHECK(evaluate(*pr.separator, pr_box(chsh).entries()) > pr.separator->bound);
  const auto u = membership_bell(uniform(chsh));
  CHECK(u.member);
  CHECK(verify_bell_certificate(uniform(chsh), u));
}

TEST_CASE("LF membership examples") {
  const auto pr = pr_box(minimal);
  const auto m = membership_lf(pr);
  CHECK_FALSE(m.member);
  CHECK(verify_lf_farkas(pr, m.farkas));
  REQUIRE(m.separator);
  CHECK(evaluate(*m.separator, pr.entries()) > m.separator->bound);
  for (const auto& p : lf_vertices(minimal).points()) CHECK(evaluate(*m.separator, p) <= m.separator->bound);

  const auto free = membership_lf(pr_box(chsh));
  CHECK(free.member);
  CHECK(verify_lf_model(*free.model, pr_box(chsh)));
}

TEST_CASE("LF membership agrees with the vertex hull") {
  std::mt19937_64 rng(3);
  for (const Scenario& s : {minimal, Scenario::uniform({2, 3}, 2, {1}), Scenario::uniform({3, 2}, 2, {0, 1})}) {
    const auto lf = lf_vertices(s);
    const auto ns = ns_vertices(s);
    for (int trial = 0; trial < 15; ++trial) {
      const auto inside = random_mixture(s, lf, rng, 3);
      const auto m = membership_lf(inside);
      CHECK(m.member);
      CHECK(verify_lf_model(*m.model, inside));

      const auto any = random_mixture(s, ns, rng, 2);
      const auto lp = membership_lf(any);
      CHECK(lp.member == geometry::in_convex_hull(any.entries(), lf).member);
      if (lp.member) {
        CHECK(verify_lf_model(*lp.model, any));
      } else {
        CHECK(verify_lf_farkas(any, lp.farkas));
      }
    }
  }
}

TEST_CASE("more friends, smaller polytope") {
  const Scenario pub = Scenario::uniform({2, 2, 2}, 2);
  const auto few = pub.with_friends({0});
  const auto many = pub.with_friends({0, 1});
  for (const auto& p : lf_vertices(many).points()) CHECK(membership_lf(Behaviour(few, p)).member);
}

TEST_CASE("facets") {
  const auto f = facets(bell_vertices(chsh));
  CHECK(f.size() == 24);
  int chsh_type = 0;
  int positivity = 0;
  const auto bell = bell_vertices(chsh);
  for (const auto& ineq : f) {
    std::size_t tight = 0;
    std::vector<RationalVector> on;
    for (const auto& p : bell.points()) {
      CHECK(evaluate(ineq, p) <= ineq.bound);
      if (evaluate(ineq, p) == ineq.bound) on.push_back(p);
    }
    tight = on.size();
    CHECK(tight >= 8);
    CHECK(oracle::affine_dimension(on) == 7);
    // CHSH-type facets are the ones some PR box violates; the others are
    // tight on the 8 deterministic points with a fixed zero entry.
    bool violated = false;
    for (const auto& pr : oracle::pr_family()) violated = violated || evaluate(ineq, pr) > ineq.bound;
    if (violated) {
      ++chsh_type;
      CHECK(tight == 8);
    } else {
      ++positivity;
    }
  }
  CHECK(positivity + chsh_type == 24);
  CHECK(chsh_type == 8);
}

TEST_CASE("genuine LF inequalities") {
  CHECK(genuine_lf_inequalities(minimal).empty());
  const auto g = genuine_lf_inequalities(two_friends);
  CHECK_FALSE(g.empty());
  const auto bell = bell_vertices(two_friends);
  const auto lf = lf_vertices(two_friends);
  for (const auto& ineq : g) {
    for (const auto& p : lf.points()) CHECK(evaluate(ineq, p) <= ineq.bound);
  }
}

TEST_CASE("dimensions") {
  CHECK(polytope_dimension(chsh) == 8);
  CHECK(polytope_dimension(minimal) == 8);
  CHECK(polytope_dimension(two_friends) == oracle::ns_dimension(oracle::Table{two_friends.outcome_table()}));
}

TEST_CASE("lift into NS and strategy models") {
  for (const Scenario& s : {minimal, two_friends, Scenario::uniform({3, 2, 2}, 2, {0, 2})}) {
    CHECK(lift_preserves_no_signalling(s));
    for (const auto& st : all_strategies(s)) {
      if (st[0][0] == 1) continue;
      CHECK(verify_lf_model(lf_model_of_strategy(s, st), deterministic(s, st)));
    }
  }
}

TEST_CASE("size guard") {
  SizeGuard tiny;
  tiny.max_enumeration_entries = 10;
  try {
    ns_vertices(chsh, tiny);
    FAIL("guard ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ScenarioTooLarge);
  }
}
