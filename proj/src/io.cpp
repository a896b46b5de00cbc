#include "lfpoly/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "lfpoly/error.hpp"

namespace lfpoly::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& value, const char* key) {
  if (!value.is_object() || !value.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return value.at(key);
}

int to_int(const Json& value) {
  if (!value.is_number_integer()) parse_error("expected an integer, got " + value.dump());
  return value.get<int>();
}

Rational to_rational(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long>());
  parse_error("expected a \"num/den\" string, got " + value.dump());
}

Json strategy_json(const Strategy& st) {
  Json rows = Json::array();
  for (const auto& row : st) {
    Json r = Json::array();
    for (int a : row) r.push_back(a + 1);
    rows.push_back(r);
  }
  return rows;
}

Strategy strategy_from_json(const Json& value) {
  if (!value.is_array()) parse_error("strategy must be an array of arrays");
  Strategy st;
  for (const auto& row : value) {
    if (!row.is_array()) parse_error("strategy must be an array of arrays");
    std::vector<int> r;
    for (const auto& a : row) r.push_back(to_int(a) - 1);
    st.push_back(std::move(r));
  }
  return st;
}

Json context_json(const std::vector<int>& x) {
  Json out = Json::array();
  for (int v : x) out.push_back(v + 1);
  return out;
}

Json matrix_json(const quantum::Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

quantum::Matrix matrix_from_json(const Json& value) {
  if (!value.is_array() || value.empty()) parse_error("matrix must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(value.size());
  quantum::Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = value[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) parse_error("matrix must be square");
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& z = row[static_cast<std::size_t>(j)];
      if (z.is_number()) {
        m(i, j) = {z.get<double>(), 0.0};
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        m(i, j) = {z[0].get<double>(), z[1].get<double>()};
      } else {
        parse_error("matrix entries are [re, im] pairs");
      }
    }
  }
  return m;
}

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << value.dump(2) << "\n";
}

Json rational_array(std::span<const Rational> values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

RationalVector parse_rational_array(const Json& value) {
  if (!value.is_array()) parse_error("expected an array of rationals");
  RationalVector out;
  out.reserve(value.size());
  for (const auto& v : value) out.push_back(to_rational(v));
  return out;
}

ScenarioSpec scenario_spec_from_json(const Json& value) {
  ScenarioSpec spec;
  spec.parties = to_int(field(value, "parties"));
  if (value.contains("friends")) {
    for (const auto& f : value.at("friends")) spec.friends.push_back(to_int(f));
  }
  for (const auto& m : field(value, "settings")) spec.settings.push_back(to_int(m));
  if (value.contains("outcomes")) {
    const Json& table = value.at("outcomes");
    if (table.is_number_integer()) {
      // Shorthand: the same outcome count everywhere.
      for (int m : spec.settings) spec.outcomes.emplace_back(static_cast<std::size_t>(std::max(m, 0)), to_int(table));
    } else {
      if (!table.is_array()) parse_error("outcomes must list one array per party");
      for (const auto& party : table) {
        if (!party.is_array()) parse_error("outcomes must list one array per party");
        std::vector<int> row;
        for (const auto& o : party) row.push_back(to_int(o));
        spec.outcomes.push_back(std::move(row));
      }
    }
  }
  return spec;
}

Scenario scenario_from_json(const Json& value) { return Scenario::from_spec(scenario_spec_from_json(value)); }

Json to_json(const Scenario& s) {
  const auto spec = s.to_spec();
  return Json{{"parties", spec.parties}, {"friends", spec.friends}, {"settings", spec.settings},
              {"outcomes", spec.outcomes}};
}

Behaviour behaviour_from_json(const Json& value, const Scenario* fallback) {
  if (value.is_object() && value.contains("scenario")) {
    return Behaviour(scenario_from_json(value.at("scenario")), parse_rational_array(field(value, "entries")));
  }
  if (fallback == nullptr) parse_error("behaviour file has no scenario and none was given");
  const Json& entries = value.is_array() ? value : field(value, "entries");
  return Behaviour(*fallback, parse_rational_array(entries));
}

Json to_json(const Behaviour& b) {
  return Json{{"scenario", to_json(b.scenario())}, {"entries", rational_array(b.entries())}};
}

Json to_json(const geometry::VRep& v) {
  Json points = Json::array();
  for (const auto& p : v.points()) points.push_back(rational_array(p));
  return Json{{"dimension", v.dimension()}, {"count", v.size()}, {"vertices", points}};
}

geometry::VRep vrep_from_json(const Json& value) {
  geometry::VRep v(field(value, "dimension").get<std::size_t>());
  for (const auto& p : field(value, "vertices")) v.add(parse_rational_array(p));
  return v;
}

Json to_json(const Inequality& ineq) {
  Json coefficients = Json::array();
  for (const auto& c : ineq.coefficients) coefficients.push_back(c.get_str());
  Json out{{"coefficients", coefficients}, {"bound", ineq.bound.get_str()}};
  if (!ineq.label.empty()) out["label"] = ineq.label;
  return out;
}

Inequality inequality_from_json(const Json& value) {
  Inequality ineq;
  auto integer = [](const Json& v) {
    if (v.is_number_integer()) return Integer(v.get<long>());
    if (!v.is_string()) parse_error("integer coefficients are strings or numbers");
    Integer out;
    if (out.set_str(v.get<std::string>(), 10) != 0) parse_error("bad integer " + v.dump());
    return out;
  };
  for (const auto& c : field(value, "coefficients")) ineq.coefficients.push_back(integer(c));
  ineq.bound = integer(field(value, "bound"));
  if (value.contains("label")) ineq.label = value.at("label").get<std::string>();
  return ineq;
}

std::string inequality_lines(const std::vector<Inequality>& list) {
  std::ostringstream out;
  for (const auto& ineq : list) {
    for (const auto& c : ineq.coefficients) out << c << ' ';
    out << "<= " << ineq.bound << '\n';
  }
  return out.str();
}

Json to_json(const LhvModel& m) {
  Json out = Json::array();
  for (std::size_t k = 0; k < m.weights.size(); ++k) {
    out.push_back(Json{{"weight", to_string(m.weights[k])}, {"strategy", strategy_json(m.strategies[k])}});
  }
  return out;
}

LhvModel lhv_model_from_json(const Json& value) {
  const Json& list = value.is_object() ? field(value, "model") : value;
  if (!list.is_array()) parse_error("LHV model must be a list of {weight, strategy}");
  LhvModel m;
  for (const auto& item : list) {
    m.weights.push_back(to_rational(field(item, "weight")));
    m.strategies.push_back(strategy_from_json(field(item, "strategy")));
  }
  return m;
}

Json to_json(const StochasticLhvModel& m) {
  Json responses = Json::array();
  for (const auto& lambda : m.responses) {
    Json parties = Json::array();
    for (const auto& party : lambda) {
      Json settings = Json::array();
      for (const auto& dist : party) settings.push_back(rational_array(dist));
      parties.push_back(settings);
    }
    responses.push_back(parties);
  }
  return Json{{"weights", rational_array(m.weights)}, {"responses", responses}};
}

StochasticLhvModel stochastic_model_from_json(const Json& value) {
  StochasticLhvModel m;
  m.weights = parse_rational_array(field(value, "weights"));
  for (const auto& lambda : field(value, "responses")) {
    std::vector<std::vector<RationalVector>> parties;
    for (const auto& party : lambda) {
      std::vector<RationalVector> settings;
      for (const auto& dist : party) settings.push_back(parse_rational_array(dist));
      parties.push_back(std::move(settings));
    }
    m.responses.push_back(std::move(parties));
  }
  return m;
}

Json to_json(const LfModel& m) {
  Json branches = Json::array();
  for (const auto& b : m.branches) {
    branches.push_back(Json{{"friend_outcomes", context_json(b.friend_outcomes)},
                            {"weight", to_string(b.weight)},
                            {"conditional", rational_array(b.conditional.entries())}});
  }
  return Json{{"scenario", to_json(m.scenario)}, {"branches", branches}};
}

LfModel lf_model_from_json(const Json& value) {
  LfModel m{scenario_from_json(field(value, "scenario")), {}};
  const Scenario restricted = restricted_public_scenario(m.scenario);
  for (const auto& item : field(value, "branches")) {
    std::vector<int> c;
    for (const auto& v : field(item, "friend_outcomes")) c.push_back(to_int(v) - 1);
    m.branches.push_back(LfBranch{std::move(c), to_rational(field(item, "weight")),
                                  Behaviour(restricted, parse_rational_array(field(item, "conditional")))});
  }
  return m;
}

Json to_json(const BellMembership& m) {
  Json out{{"set", "bell"}, {"member", m.member}};
  if (m.model) out["model"] = to_json(*m.model);
  if (m.separator) out["separator"] = to_json(*m.separator);
  return out;
}

Json to_json(const LfMembership& m) {
  Json out{{"set", "lf"}, {"member", m.member}};
  if (m.model) out["model"] = to_json(*m.model);
  if (!m.member) out["farkas"] = rational_array(m.farkas);
  if (m.separator) out["separator"] = to_json(*m.separator);
  return out;
}

Json to_json(const NsMembership& m) {
  Json out{{"set", "ns"}, {"member", m.member}};
  if (m.witness) {
    out["witness"] = Json{{"party", m.witness->party + 1},
                          {"context", context_json(m.witness->context)},
                          {"other", context_json(m.witness->other)}};
  }
  return out;
}

bool check_certificate(const Json& certificate, const Behaviour& b) {
  try {
    const std::string set = field(certificate, "set").get<std::string>();
    const bool member = field(certificate, "member").get<bool>();
    if (set == "bell") {
      BellMembership m;
      m.member = member;
      if (member) {
        m.model = lhv_model_from_json(field(certificate, "model"));
      } else {
        m.separator = inequality_from_json(field(certificate, "separator"));
      }
      return verify_bell_certificate(b, m);
    }
    if (set == "lf") {
      if (member) return verify_lf_model(lf_model_from_json(field(certificate, "model")), b);
      const auto y = parse_rational_array(field(certificate, "farkas"));
      if (!verify_lf_farkas(b, y)) return false;
      const auto separator = inequality_from_json(field(certificate, "separator"));
      return separator == lf_separator(b.scenario(), y) && evaluate(separator, b.entries()) > separator.bound;
    }
    if (set == "lhv") {
      return member && verify_model(lhv_model_from_json(field(certificate, "model")), b).ok;
    }
    if (set == "ns") {
      if (member) return is_no_signalling(b);
      // Recompute the two marginals named by the witness.
      const auto& w = field(certificate, "witness");
      const auto party = static_cast<std::size_t>(to_int(field(w, "party")) - 1);
      std::vector<int> x, y;
      for (const auto& v : field(w, "context")) x.push_back(to_int(v) - 1);
      for (const auto& v : field(w, "other")) y.push_back(to_int(v) - 1);
      const auto& s = b.scenario();
      if (party >= s.parties() || x.size() != s.parties() || y.size() != s.parties()) return false;
      for (std::size_t i = 0; i < s.parties(); ++i) {
        if (i != party && x[i] != y[i]) return false;
        if (x[i] < 0 || x[i] >= s.settings(i) || y[i] < 0 || y[i] >= s.settings(i)) return false;
      }
      std::map<std::vector<int>, Rational> mx, my;
      auto accumulate = [&](const std::vector<int>& ctx, std::map<std::vector<int>, Rational>& into) {
        const auto& layout = b.layout();
        const std::size_t k = layout.context_index(ctx);
        for (std::size_t local = 0; local < layout.outcome_count(k); ++local) {
          auto a = layout.outcomes_at(k, local);
          a[party] = 0;
          into[a] += b.entries()[layout.offset(k) + local];
        }
      };
      accumulate(x, mx);
      accumulate(y, my);
      return mx != my;
    }
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

Json to_json(const quantum::QuantumModel& q) {
  Json povms = Json::array();
  for (const auto& party : q.povms) {
    Json settings = Json::array();
    for (const auto& setting : party) {
      Json elements = Json::array();
      for (const auto& e : setting) elements.push_back(matrix_json(e));
      settings.push_back(elements);
    }
    povms.push_back(settings);
  }
  return Json{{"dimensions", q.dimensions}, {"state", matrix_json(q.state)}, {"povms", povms}};
}

quantum::QuantumModel quantum_model_from_json(const Json& value) {
  quantum::QuantumModel q;
  for (const auto& d : field(value, "dimensions")) q.dimensions.push_back(to_int(d));
  q.state = matrix_from_json(field(value, "state"));
  for (const auto& party : field(value, "povms")) {
    std::vector<std::vector<quantum::Matrix>> settings;
    for (const auto& setting : party) {
      std::vector<quantum::Matrix> elements;
      for (const auto& e : setting) elements.push_back(matrix_from_json(e));
      settings.push_back(std::move(elements));
    }
    q.povms.push_back(std::move(settings));
  }
  return q;
}

Json to_json(const quantum::FloatBehaviour& t) {
  return Json{{"scenario", to_json(t.scenario)}, {"entries", t.entries}};
}

}  // namespace lfpoly::io
