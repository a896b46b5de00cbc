// Acceptance run: one PASS/FAIL line per criterion, with timings. Every
// certificate produced along the way is serialized, parsed back and checked
// by direct arithmetic; criterion 10 reports the totals.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lfpoly/error.hpp"
#include "lfpoly/io.hpp"
#include "lfpoly/lhv.hpp"
#include "lfpoly/polytopes.hpp"
#include "lfpoly/quantum.hpp"
#include "oracles.hpp"

using namespace lfpoly;
using io::Json;

namespace {

struct Certificates {
  std::size_t checked = 0;
  std::size_t failed = 0;

  bool check(const Json& certificate, const Behaviour& b) {
    ++checked;
    const bool ok = io::check_certificate(Json::parse(certificate.dump()), b);
    if (!ok) ++failed;
    return ok;
  }
};

Certificates certificates;

Json lhv_certificate(const LhvModel& m) { return Json{{"set", "lhv"}, {"member", true}, {"model", io::to_json(m)}}; }

Json lf_certificate(const LfModel& m) { return Json{{"set", "lf"}, {"member", true}, {"model", io::to_json(m)}}; }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > budget_seconds) {
    out.pass = false;
    out.detail += " [over the " + std::to_string(static_cast<int>(budget_seconds)) + " s budget]";
  }
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << number << "  " << title << "  ("
            << std::fixed << std::setprecision(2) << seconds << " s)  " << out.detail << std::endl;
}

Behaviour random_mixture(const Scenario& s, const geometry::VRep& v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> terms_pick(1, 4);
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  const std::size_t terms = terms_pick(rng);
  const auto w = oracle::random_weights(rng, terms);
  RationalVector e(v.dimension());
  for (std::size_t t = 0; t < terms; ++t) {
    const auto& p = v[pick(rng)];
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (sgn(p[j]) != 0) e[j] += w[t] * p[j];
    }
  }
  return Behaviour(s, std::move(e));
}

std::size_t multi_setting_parties(const Scenario& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.parties(); ++i) n += s.settings(i) >= 2;
  return n;
}

// Every scenario with N in {2, 3}, m_i in {2, 3}, binary outcomes, and every friend set.
std::vector<Scenario> sweep_scenarios() {
  std::vector<Scenario> out;
  for (std::size_t n = 2; n <= 3; ++n) {
    for (unsigned settings_mask = 0; settings_mask < (1U << n); ++settings_mask) {
      std::vector<int> m;
      for (std::size_t i = 0; i < n; ++i) m.push_back(settings_mask >> i & 1U ? 3 : 2);
      for (unsigned friend_mask = 0; friend_mask < (1U << n); ++friend_mask) {
        std::vector<std::size_t> friends;
        for (std::size_t i = 0; i < n; ++i) {
          if (friend_mask >> i & 1U) friends.push_back(i);
        }
        out.push_back(Scenario::uniform(m, 2, friends));
      }
    }
  }
  return out;
}

// Enumeration limits for the sweep: restricted tables of length at most 64
// (the tripartite two-setting case is the largest that the double
// description finishes on) and at most this many LF points.
constexpr std::size_t kSweepRestrictedEntries = 64;
constexpr std::size_t kSweepLfPoints = 60000;

struct SweepResult {
  std::string name;
  Classification tag;
  bool explicit_vertices = false;
  std::size_t lf_points = 0;
  std::size_t bell_dim = 0;
  std::size_t ns_dim = 0;
  std::optional<std::size_t> lf_dim;  // from explicit vertices
};

std::vector<SweepResult> sweep_results;

// One scenario of the sandwich / classification sweep. Returns an empty
// string on success, otherwise what went wrong.
std::string sweep_one(const Scenario& s, SweepResult& result) {
  result.name = s.describe();
  const Scenario restricted = restricted_public_scenario(s);
  const auto bell = bell_vertices(s);

  // B within LF, vertex by vertex: an explicit LF model for every deterministic point.
  for (const auto& st : all_strategies(s)) {
    const auto d = deterministic(s, st);
    const auto model = lf_model_of_strategy(s, st);
    if (!verify_lf_model(model, d)) return "LF model of a deterministic point fails";
    if (!certificates.check(lf_certificate(model), d)) return "LF model certificate fails after JSON";
  }

  // LF within NS: the lift maps the restricted NS affine hull into that of s
  // and is a 0/1 matrix, so positivity carries over.
  if (!lift_preserves_no_signalling(s)) return "lift does not preserve no-signalling";

  SizeGuard guard;
  guard.max_enumeration_entries = kSweepRestrictedEntries;
  guard.max_rays = 5000000;
  std::optional<geometry::VRep> lf;
  if (Layout(restricted).dimension() <= kSweepRestrictedEntries) {
    const Integer predicted = lf_extreme_count(s, guard);
    if (predicted <= static_cast<unsigned long>(kSweepLfPoints)) {
      lf = lf_vertices(s, guard);
      if (Integer(static_cast<unsigned long>(lf->size())) != predicted) return "LF point count disagrees";
      for (const auto& p : lf->points()) {
        if (!is_no_signalling(Behaviour(s, p))) return "LF vertex violates no-signalling";
      }
      result.explicit_vertices = true;
      result.lf_points = lf->size();
    }
  }

  // LF = NS ?
  bool lf_equals_ns = false;
  if (s.friends().empty()) {
    // The lift is the identity on every Bell vertex (checked above: the
    // one-branch model reproduces the point with itself as conditional), and
    // the Bell vertices affinely span the NS hull (dimension check below).
    lf_equals_ns = true;
    if (lf && !lf->same_points(ns_vertices(s, guard))) return "friendless LF vertices differ from NS vertices";
  } else {
    // Witness: a PR box using some friend's query setting.
    bool found = false;
    for (const auto& pr : embedded_pr_boxes(s)) {
      bool touches_query = false;
      const Layout& layout = pr.layout();
      for (auto f : s.friends()) {
        // The box uses setting 0 of f iff f's output there is not always 0.
        for (std::size_t k = 0; k < layout.contexts(); ++k) {
          if (layout.context(k)[f] != 0) continue;
          for (std::size_t l = 0; l < layout.outcome_count(k); ++l) {
            if (layout.outcomes_at(k, l)[f] == 1 && sgn(pr.entries()[layout.offset(k) + l]) != 0) touches_query = true;
          }
        }
      }
      if (!touches_query) continue;
      const auto m = membership_lf(pr);
      if (!m.member) {
        if (!certificates.check(io::to_json(m), pr)) return "Farkas certificate fails after JSON";
        if (!is_no_signalling(pr) || !oracle::is_ns_vertex(oracle::Table{s.outcome_table()}, pr.entries())) {
          return "witness is not an NS vertex";
        }
        found = true;
        break;
      }
    }
    if (!found) return "no NS point outside LF found although friends are present";
  }

  // LF = B ?
  bool lf_equals_bell = false;
  if (multi_setting_parties(restricted) >= 2) {
    // Witness: a PR box of the restricted scenario lifted with all records 0.
    const std::vector<int> zeros(s.friends().size(), 0);
    bool found = false;
    for (const auto& pr : embedded_pr_boxes(restricted)) {
      const Behaviour point(s, lf_point(s, zeros, pr));
      const auto in_lf = membership_lf(point);
      if (!in_lf.member || !certificates.check(io::to_json(in_lf), point)) return "lifted point not certified in LF";
      const auto in_bell = membership_bell(point);
      if (!in_bell.member) {
        if (!certificates.check(io::to_json(in_bell), point)) return "Bell separator fails after JSON";
        found = true;
        break;
      }
    }
    if (!found) return "no LF point outside the Bell polytope found";
  } else {
    if (!lf) return "restricted scenario has one multi-setting party but was not enumerated";
    // Every LF vertex must then be Bell-local, with a certificate.
    for (const auto& p : lf->points()) {
      const Behaviour b(s, p);
      const auto m = membership_bell(b);
      if (!certificates.check(io::to_json(m), b)) return "Bell certificate fails after JSON";
      if (!m.member) return "LF vertex outside the Bell polytope";
    }
    lf_equals_bell = true;
  }

  const Classification derived = lf_equals_ns       ? Classification::TrivialNoSignalling
                                 : lf_equals_bell ? Classification::EqualsBell
                                                  : Classification::StrictIntermediate;
  result.tag = classify(s).tag;
  if (derived != result.tag) {
    return "classify says " + std::string(to_string(result.tag)) + ", hulls say " + std::string(to_string(derived));
  }

  result.bell_dim = geometry::affine_dimension(bell);
  SizeGuard dim_guard;
  dim_guard.max_enumeration_entries = 36;  // vertices only for small restricted tables; sandwich otherwise
  const auto dims = polytope_dimensions(s, dim_guard);
  result.ns_dim = dims.ns;
  if (lf) result.lf_dim = geometry::affine_dimension(*lf);
  if (!dims.lf) return "LF dimension undetermined";
  if (result.lf_dim && *result.lf_dim != *dims.lf) return "LF dimension from vertices disagrees";
  return {};
}

}  // namespace

int main() {
  const Scenario minimal = Scenario::uniform({2, 2}, 2, {0});
  const Scenario chsh = Scenario::uniform({2, 2}, 2);
  const Scenario two_friends = Scenario::uniform({3, 3}, 2, {0, 1});

  report(1, "minimal scenario: LF hull equals Bell hull, classified EqualsBell", 5, [&] {
    const bool equal = geometry::hull_equal(bell_vertices(minimal), lf_vertices(minimal));
    const auto tag = classify(minimal).tag;
    return Outcome{equal && tag == Classification::EqualsBell,
                   std::string("hull_equal=") + (equal ? "true" : "false") + " classify=" + std::string(to_string(tag))};
  });

  report(2, "LF vertex count equals the extreme-point formula", 30, [&] {
    // Independent expectations: 16 for the minimal scenario (2 friend records
    // times 8 deterministic points of the 1x2 restricted scenario) and 24 for
    // CHSH (16 deterministic points plus 8 PR boxes).
    const oracle::Table restricted_minimal{restricted_public_scenario(minimal).outcome_table()};
    const std::size_t expect_minimal = 2 * oracle::strategies(restricted_minimal).size();
    const std::size_t expect_chsh = oracle::strategies(oracle::Table{chsh.outcome_table()}).size() +
                                    oracle::pr_family().size();
    std::ostringstream detail;
    bool ok = true;
    const std::vector<Scenario> list = {minimal,
                                        chsh,
                                        Scenario::uniform({2, 4}, 2, {0}),
                                        Scenario::uniform({3, 2}, 2, {0, 1}),
                                        two_friends,
                                        Scenario::uniform({2, 2, 2}, 2, {0, 1, 2}),
                                        Scenario::uniform({2, 2, 3}, 2, {0, 1})};
    for (const auto& s : list) {
      const auto v = lf_vertices(s);
      const auto count = lf_extreme_count(s);
      ok = ok && Integer(static_cast<unsigned long>(v.size())) == count;
      detail << s.describe() << ":" << v.size() << "/" << count << "  ";
    }
    ok = ok && lf_vertices(minimal).size() == expect_minimal && expect_minimal == 16;
    ok = ok && lf_vertices(chsh).size() == expect_chsh && expect_chsh == 24;
    return Outcome{ok, detail.str()};
  });

  report(3, "(3,3) with two friends: LF exceeds Bell, NS exceeds LF", 600, [&] {
    const auto lf = lf_vertices(two_friends);
    std::optional<std::size_t> outside_bell;
    for (std::size_t i = 0; i < lf.size() && !outside_bell; ++i) {
      const Behaviour b(two_friends, lf[i]);
      const auto m = membership_bell(b);
      certificates.check(io::to_json(m), b);
      if (!m.member) outside_bell = i;
    }
    const auto genuine = genuine_lf_inequalities(two_friends);
    const auto ns = ns_vertices(two_friends);
    std::optional<std::size_t> outside_lf;
    for (std::size_t i = 0; i < ns.size() && !outside_lf; ++i) {
      const Behaviour b(two_friends, ns[i]);
      const auto m = membership_lf(b);
      certificates.check(io::to_json(m), b);
      if (!m.member) outside_lf = i;
    }
    std::ostringstream detail;
    detail << "LF vertices " << lf.size() << ", genuine inequalities " << genuine.size() << ", NS vertices "
           << ns.size() << ", first LF vertex outside B #" << (outside_bell ? std::to_string(*outside_bell) : "-")
           << ", first NS vertex outside LF #" << (outside_lf ? std::to_string(*outside_lf) : "-");
    return Outcome{outside_bell && !genuine.empty() && outside_lf, detail.str()};
  });

  report(4, "LF -> LHV extraction on 100 random mixtures per scenario", 300, [&] {
    std::mt19937_64 rng(2024);
    std::size_t failed = 0, total = 0;
    for (const auto& s : {minimal, Scenario::uniform({2, 4}, 2, {0}), Scenario::uniform({2, 2, 2}, 2, {0, 1, 2})}) {
      const auto v = lf_vertices(s);
      for (int trial = 0; trial < 100; ++trial) {
        ++total;
        const auto b = random_mixture(s, v, rng);
        const auto m = membership_lf(b);
        if (!m.member) {
          ++failed;
          continue;
        }
        certificates.check(io::to_json(m), b);
        const auto lhv = lf_to_lhv(*m.model, s);
        if (!verify_model(lhv, b).ok) ++failed;
        certificates.check(lhv_certificate(lhv), b);
      }
    }
    return Outcome{failed == 0, std::to_string(total) + " behaviours, " + std::to_string(failed) + " failures"};
  });

  report(5, "stochastic -> joint -> deterministic reproduces 200 CHSH models", 60, [&] {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> lambdas(1, 4);
    std::size_t failed = 0;
    for (int trial = 0; trial < 200; ++trial) {
      StochasticLhvModel m;
      const std::size_t n = lambdas(rng);
      m.weights = oracle::random_weights(rng, n);
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<std::vector<RationalVector>> parties;
        for (int i = 0; i < 2; ++i) {
          std::vector<RationalVector> settings;
          for (int x = 0; x < 2; ++x) settings.push_back(oracle::random_weights(rng, 2));
          parties.push_back(settings);
        }
        m.responses.push_back(parties);
      }
      const auto expected = behaviour_of(m, chsh);
      const auto det = deterministic_from_joint(joint_from_stochastic(m));
      if (!(behaviour_of(det, chsh) == expected)) ++failed;
      certificates.check(lhv_certificate(det), expected);
    }
    return Outcome{failed == 0, "200 models, " + std::to_string(failed) + " failures"};
  });

  report(6, "sandwich B <= LF <= NS and classification on every N<=3, m<=3, o=2 scenario", 1800, [&] {
    const auto list = sweep_scenarios();
    std::size_t explicit_count = 0;
    std::ostringstream problems;
    for (const auto& s : list) {
      SweepResult r;
      const auto problem = sweep_one(s, r);
      if (!problem.empty()) problems << s.describe() << ": " << problem << "; ";
      explicit_count += r.explicit_vertices;
      sweep_results.push_back(r);
    }
    std::ostringstream detail;
    detail << list.size() << " scenarios, " << explicit_count << " with explicit LF vertex lists";
    if (!problems.str().empty()) detail << "; " << problems.str();
    return Outcome{problems.str().empty(), detail.str()};
  });

  report(7, "hierarchy on the tripartite (2,2,2) scenario", 600, [&] {
    const Scenario pub = Scenario::uniform({2, 2, 2}, 2);
    const Scenario f12 = pub.with_friends({0, 1});
    const Scenario f1 = pub.with_friends({0});
    const bool equal = geometry::hull_equal(lf_vertices(f12), bell_vertices(f12));
    const auto pr = embedded_pr_box(pub, 1, 2, {0, 1}, {0, 1});
    const Behaviour in_f1(f1, pr.entries());
    const Behaviour in_f12(f12, pr.entries());
    const auto m1 = membership_lf(in_f1);
    const auto m12 = membership_lf(in_f12);
    const bool c1 = certificates.check(io::to_json(m1), in_f1);
    const bool c12 = certificates.check(io::to_json(m12), in_f12);
    // The larger friend set's LF polytope sits inside the smaller one's.
    bool nested = true;
    for (const auto& p : lf_vertices(f12).points()) {
      const Behaviour b(f1, p);
      const auto m = membership_lf(b);
      nested = nested && m.member && certificates.check(io::to_json(m), b);
    }
    std::ostringstream detail;
    detail << "LF{1,2}=B " << equal << ", PR(2,3) in LF{1} " << m1.member << ", in LF{1,2} " << m12.member
           << ", LF{1,2} inside LF{1} " << nested;
    return Outcome{equal && m1.member && !m12.member && c1 && c12 && nested, detail.str()};
  });

  report(8, "Tsirelson point: CHSH 2 sqrt 2, outside LF of the minimal scenario, no-signalling", 60, [&] {
    const auto presets = quantum::preset_models();
    const auto& p = presets[0];
    const auto t = quantum::born_behaviour(p.model, p.scenario);
    const double value = quantum::evaluate(chsh_inequality(p.scenario), t.entries);
    const bool close = std::abs(value - 2 * std::sqrt(2.0)) <= 1e-9;
    const auto rational = quantum::rationalize(t, 1000000);
    const Behaviour b(minimal, rational.entries());
    const auto m = membership_lf(b);
    const bool cert = certificates.check(io::to_json(m), b);
    const bool ns = is_no_signalling(b);
    std::ostringstream detail;
    detail << std::setprecision(12) << "CHSH " << value << ", LF member " << m.member << ", NS " << ns;
    return Outcome{close && !m.member && cert && ns, detail.str()};
  });

  report(9, "dim B = dim LF = dim NS on every sweep scenario; CHSH gives 8", 300, [&] {
    std::ostringstream problems;
    std::size_t from_vertices = 0;
    for (const auto& s : sweep_scenarios()) {
      const std::size_t oracle_dim = oracle::ns_dimension(oracle::Table{s.outcome_table()});
      SizeGuard dim_guard;
      dim_guard.max_enumeration_entries = 36;
      const auto dims = polytope_dimensions(s, dim_guard);
      const std::size_t bell_rank = oracle::affine_dimension(bell_vertices(s).points());
      const bool ok = dims.bell == oracle_dim && bell_rank == oracle_dim && dims.ns == oracle_dim && dims.lf &&
                      *dims.lf == oracle_dim;
      if (!ok) problems << s.describe() << " ";
      from_vertices += dims.lf && !dims.lf_from_sandwich;
    }
    for (const auto& r : sweep_results) {
      if (r.lf_dim && *r.lf_dim != r.bell_dim) problems << r.name << " (explicit LF) ";
    }
    const std::size_t chsh_dim = polytope_dimension(chsh);
    std::ostringstream detail;
    detail << "CHSH " << chsh_dim << ", LF dimension from vertices on " << from_vertices
           << " scenarios, from B <= LF <= NS on the rest";
    if (!problems.str().empty()) detail << "; mismatch: " << problems.str();
    return Outcome{problems.str().empty() && chsh_dim == 8, detail.str()};
  });

  report(10, "every emitted certificate re-verifies by direct arithmetic", 1e9, [&] {
    return Outcome{certificates.failed == 0 && certificates.checked > 0,
                   std::to_string(certificates.checked) + " certificates, " + std::to_string(certificates.failed) +
                       " failures"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
