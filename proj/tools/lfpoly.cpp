#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lfpoly/error.hpp"
#include "lfpoly/io.hpp"
#include "lfpoly/lhv.hpp"
#include "lfpoly/parallel.hpp"
#include "lfpoly/polytopes.hpp"
#include "lfpoly/quantum.hpp"
#include "lfpoly/scenario.hpp"

using namespace lfpoly;
using io::Json;

namespace {

struct Options {
  std::string scenario;
  std::string behaviour;
  std::string output;
  std::string check;
  std::string set = "bell";
  std::string format = "json";
  std::vector<int> left, right;
  std::string preset;
  std::string model;
  long max_denominator = 1000000;
  std::size_t threads = 0;
  std::size_t max_entries = 0;
  std::size_t max_rays = 0;
};

// Raised for malformed invocations that CLI11 cannot see (missing file pairs).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SizeGuard guard_of(const Options& o) {
  SizeGuard g = SizeGuard::from_environment();
  if (o.max_entries > 0) g.max_enumeration_entries = o.max_entries;
  if (o.max_rays > 0) g.max_rays = o.max_rays;
  return g;
}

void emit_json(const Options& o, const Json& value) {
  if (o.output.empty()) {
    std::cout << value.dump(2) << '\n';
  } else {
    io::write_file(o.output, value);
  }
}

void emit_text(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + o.output);
  out << text;
}

Scenario need_scenario(const Options& o) {
  if (o.scenario.empty()) throw UsageError("a scenario file is required");
  return io::scenario_from_json(io::read_file(o.scenario));
}

Behaviour need_behaviour(const Options& o) {
  if (o.behaviour.empty()) throw UsageError("--behaviour is required");
  const Json value = io::read_file(o.behaviour);
  if (o.scenario.empty()) return io::behaviour_from_json(value);
  // --scenario wins over a scenario embedded in the file, so one table can be
  // tested under several friend sets.
  const Scenario s = need_scenario(o);
  const Behaviour b = io::behaviour_from_json(value, &s);
  if (b.scenario().outcome_table() != s.outcome_table()) {
    throw Error(ErrorKind::IncompatibleScenario, "behaviour file is for " + b.scenario().describe());
  }
  return Behaviour(s, b.entries());
}

std::vector<std::size_t> zero_based(const std::vector<int>& friends) {
  std::vector<std::size_t> out;
  for (int f : friends) {
    if (f < 1) throw Error(ErrorKind::BadFriendIndex, "friend indices are 1-based");
    out.push_back(static_cast<std::size_t>(f - 1));
  }
  return out;
}

int run_check(const Options& o) {
  const Behaviour b = need_behaviour(o);
  const bool ok = io::check_certificate(io::read_file(o.check), b);
  std::cout << (ok ? "verified: exact" : "verification failed") << '\n';
  return ok ? 0 : 2;
}

int classify_cmd(const Options& o) {
  const Scenario s = need_scenario(o);
  const auto result = classify(s);
  if (o.format == "table") {
    std::ostringstream text;
    text << to_string(result.tag) << " (" << describe(result.rule) << ")\n";
    emit_text(o, text.str());
  } else {
    emit_json(o, Json{{"scenario", s.describe()},
                      {"classification", std::string(to_string(result.tag))},
                      {"rule", std::string(to_string(result.rule))},
                      {"reason", std::string(describe(result.rule))},
                      {"quantum", std::string(to_string(quantum_relation(s)))}});
  }
  return 0;
}

int compare_cmd(const Options& o) {
  const Scenario s = need_scenario(o);
  const auto relation = compare_friend_sets(s, zero_based(o.left), zero_based(o.right));
  if (o.format == "table") {
    emit_text(o, std::string(to_string(relation.tag)) + (relation.both_equal_bell ? " (both equal Bell)\n" : "\n"));
  } else {
    emit_json(o, Json{{"relation", std::string(to_string(relation.tag))},
                      {"both_equal_bell", relation.both_equal_bell}});
  }
  return 0;
}

int vertices_cmd(const Options& o) {
  const Scenario s = need_scenario(o);
  const SizeGuard g = guard_of(o);
  geometry::VRep v(0);
  if (o.set == "bell") {
    v = bell_vertices(s);
  } else if (o.set == "ns") {
    v = ns_vertices(s, g);
  } else {
    v = lf_vertices(s, g);
  }
  if (o.format == "table") {
    emit_text(o, o.set + " vertices: " + std::to_string(v.size()) + " in dimension " + std::to_string(v.dimension()) +
                     "\n");
  } else {
    emit_json(o, io::to_json(v));
  }
  return 0;
}

int facets_cmd(const Options& o) {
  const Scenario s = need_scenario(o);
  const SizeGuard g = guard_of(o);
  geometry::VRep v = o.set == "bell" ? bell_vertices(s) : o.set == "ns" ? ns_vertices(s, g) : lf_vertices(s, g);
  emit_text(o, io::inequality_lines(facets(v, g)));
  return 0;
}

int genuine_cmd(const Options& o) {
  emit_text(o, io::inequality_lines(genuine_lf_inequalities(need_scenario(o), guard_of(o))));
  return 0;
}

int membership_cmd(const Options& o) {
  if (!o.check.empty()) return run_check(o);
  const Behaviour b = need_behaviour(o);
  const SizeGuard g = guard_of(o);
  Json cert;
  if (o.set == "bell") {
    cert = io::to_json(membership_bell(b, g));
  } else if (o.set == "lf") {
    cert = io::to_json(membership_lf(b, g));
  } else {
    cert = io::to_json(membership_ns(b));
  }
  // The certificate file is always JSON; the table form only changes stdout.
  if (o.format == "table") {
    std::cout << o.set << " member: " << (cert["member"].get<bool>() ? "true" : "false") << '\n';
    if (!o.output.empty()) io::write_file(o.output, cert);
  } else {
    emit_json(o, cert);
  }
  return 0;
}

int extract_cmd(const Options& o) {
  if (!o.check.empty()) return run_check(o);
  const Behaviour b = need_behaviour(o);
  const auto m = membership_lf(b, guard_of(o));
  if (!m.member) {
    emit_json(o, io::to_json(m));
    return 0;
  }
  const LhvModel lhv = lf_to_lhv(*m.model, b.scenario());
  const auto check = verify_model(lhv, b);
  if (!check.ok) throw Error(ErrorKind::VerificationFailure, "extracted model does not reproduce the behaviour");
  emit_json(o, Json{{"set", "lhv"}, {"member", true}, {"model", io::to_json(lhv)}});
  std::cerr << "verified: exact\n";
  return 0;
}

int dimension_cmd(const Options& o) {
  const Scenario s = need_scenario(o);
  const auto dims = polytope_dimensions(s, guard_of(o));
  if (!dims.lf) throw Error(ErrorKind::ScenarioTooLarge, "LF dimension is past the enumeration guard");
  if (dims.bell != dims.ns || *dims.lf != dims.bell) {
    throw Error(ErrorKind::VerificationFailure, "dimensions of B, LF and NS disagree");
  }
  const std::size_t d = dims.bell;
  if (o.format == "table") {
    emit_text(o, std::to_string(d) + "\n");
  } else {
    Json out{{"dimension", d}, {"bell", dims.bell}, {"ns", dims.ns}};
    out["lf"] = dims.lf ? Json(*dims.lf) : Json(nullptr);
    out["lf_from_sandwich"] = dims.lf_from_sandwich;
    emit_json(o, out);
  }
  return 0;
}

int quantum_cmd(const Options& o) {
  std::optional<quantum::Preset> chosen;
  if (!o.preset.empty()) {
    for (auto& p : quantum::preset_models()) {
      if (p.name == o.preset) chosen = p;
    }
    if (!chosen) throw UsageError("unknown preset '" + o.preset + "'");
  } else {
    if (o.model.empty()) throw UsageError("give --preset or --model with --scenario");
    chosen = quantum::Preset{"file", need_scenario(o), io::quantum_model_from_json(io::read_file(o.model))};
  }
  const auto t = quantum::born_behaviour(chosen->model, chosen->scenario);
  const Behaviour b = quantum::rationalize(t, o.max_denominator);
  Json out{{"float", io::to_json(t)},
           {"behaviour", io::to_json(b)},
           {"signalling_deviation", quantum::signalling_deviation(t)},
           {"no_signalling", is_no_signalling(b)}};
  const auto& s = chosen->scenario;
  const bool chsh_shape = s.parties() >= 2 && s.settings(0) >= 2 && s.settings(1) >= 2;
  if (chsh_shape) out["chsh"] = quantum::evaluate(chsh_inequality(s), t.entries);
  if (o.format == "table") {
    std::ostringstream text;
    text << "no-signalling deviation " << quantum::signalling_deviation(t) << '\n';
    if (chsh_shape) text << "CHSH " << out["chsh"].get<double>() << '\n';
    emit_text(o, text.str());
  } else {
    emit_json(o, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell, Local Friendliness and no-signalling polytopes with exact certificates"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker thread cap");
  app.add_option("--output,-o", o.output, "Write to this file instead of stdout");
  app.add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--max-entries", o.max_entries, "Enumeration guard on table length (env LFPOLY_SIZE_GUARD)");
  app.add_option("--max-rays", o.max_rays, "Double description ray budget");

  auto scenario_arg = [&](CLI::App* sub) { sub->add_option("scenario,--scenario", o.scenario, "Scenario JSON"); };
  auto set_arg = [&](CLI::App* sub) {
    sub->add_option("--set", o.set, "bell, ns or lf")->check(CLI::IsMember({"bell", "ns", "lf"}));
  };

  auto* classify_app = app.add_subcommand("classify", "Classify the LF polytope of a scenario");
  scenario_arg(classify_app);
  auto* compare_app = app.add_subcommand("compare", "Relate LF polytopes of two friend sets");
  scenario_arg(compare_app);
  compare_app->add_option("--left", o.left, "Friend set (1-based)")->delimiter(',');
  compare_app->add_option("--right", o.right, "Friend set (1-based)")->delimiter(',');
  auto* vertices_app = app.add_subcommand("vertices", "Enumerate vertices");
  scenario_arg(vertices_app);
  set_arg(vertices_app);
  auto* facets_app = app.add_subcommand("facets", "Enumerate facets");
  scenario_arg(facets_app);
  set_arg(facets_app);
  auto* genuine_app = app.add_subcommand("genuine", "LF facets that are not Bell facets");
  scenario_arg(genuine_app);
  auto* membership_app = app.add_subcommand("membership", "Membership with certificate");
  scenario_arg(membership_app);
  set_arg(membership_app);
  membership_app->add_option("--behaviour", o.behaviour, "Behaviour JSON");
  membership_app->add_option("--check", o.check, "Re-verify this certificate instead of solving");
  auto* extract_app = app.add_subcommand("extract-lhv", "Deterministic LHV model of an LF behaviour");
  scenario_arg(extract_app);
  extract_app->add_option("--behaviour", o.behaviour, "Behaviour JSON");
  extract_app->add_option("--check", o.check, "Re-verify this model instead of extracting");
  auto* dimension_app = app.add_subcommand("dimension", "Common dimension of B, LF and NS");
  scenario_arg(dimension_app);
  auto* quantum_app = app.add_subcommand("quantum-eval", "Born-rule behaviour, rationalized");
  scenario_arg(quantum_app);
  quantum_app->add_option("--preset", o.preset, "tsirelson_chsh or ghz_3party");
  quantum_app->add_option("--model", o.model, "Quantum model JSON");
  quantum_app->add_option("--max-denominator", o.max_denominator, "Denominator budget")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (o.threads > 0) set_thread_limit(o.threads);
    if (*classify_app) return classify_cmd(o);
    if (*compare_app) return compare_cmd(o);
    if (*vertices_app) return vertices_cmd(o);
    if (*facets_app) return facets_cmd(o);
    if (*genuine_app) return genuine_cmd(o);
    if (*membership_app) return membership_cmd(o);
    if (*extract_app) return extract_cmd(o);
    if (*dimension_app) return dimension_cmd(o);
    if (*quantum_app) return quantum_cmd(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == ErrorKind::ScenarioTooLarge ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
