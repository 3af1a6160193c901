#include "liplab/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "liplab/solvers.hpp"

namespace liplab {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T require_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

PureProfile profile_from_labels(const json& arr) {
  if (!arr.is_array()) throw ParseError("profile must be an array of action labels");
  PureProfile a;
  for (const auto& x : arr) {
    if (!x.is_number_integer()) throw ParseError("action labels must be integers");
    a.actions.push_back(x.get<int>() - 1);
  }
  return a;
}

json profile_to_labels(const PureProfile& a) {
  json arr = json::array();
  for (int x : a.actions) arr.push_back(x + 1);
  return arr;
}

Game game_from_json(const json& doc);

Game structured_game_from_json(const json& doc) {
  const std::string type = require_field<std::string>(doc, "type");
  if (type == "matching_pennies") {
    return make_matching_pennies(require_field<int>(doc, "k"), require_field<int>(doc, "m"));
  }
  if (type == "constant") {
    const double value = doc.contains("value") ? require_field<double>(doc, "value") : 0.0;
    return make_constant_game(require_field<int>(doc, "n"), require_field<int>(doc, "m"), value);
  }
  if (type == "dominant_action") {
    return make_dominant_action_game(require_field<int>(doc, "n"), require_field<int>(doc, "m"));
  }
  if (type == "random_lipschitz") {
    GeneratorConfig config;
    config.n = require_field<int>(doc, "n");
    config.m = require_field<int>(doc, "m");
    config.lambda = require_field<double>(doc, "lambda");
    config.seed = require_field<std::uint64_t>(doc, "seed");
    return random_lipschitz_game(config);
  }
  if (type == "scaled") {
    if (!doc.contains("base")) throw ParseError("scaled game needs a base");
    return scale_game(game_from_json(doc.at("base")), require_field<double>(doc, "c"));
  }
  throw ParseError("unknown game type '" + type + "'");
}

Game game_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("game document must be an object");
  if (doc.contains("type")) return structured_game_from_json(doc);
  const int n = require_field<int>(doc, "n");
  const int m = require_field<int>(doc, "m");
  if (n < 1 || m < 2) throw ParseError("need n >= 1 and m >= 2");
  const std::uint64_t space = require_enumerable(n, m);
  if (!doc.contains("payoffs") || !doc.at("payoffs").is_array() ||
      doc.at("payoffs").size() != static_cast<std::size_t>(n)) {
    throw ParseError("payoffs must hold one array per player");
  }
  std::vector<double> tensor(space * static_cast<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& row = doc.at("payoffs").at(i);
    if (!row.is_array() || row.size() != space) {
      throw ParseError("player payoff array must have m^n entries");
    }
    for (std::uint64_t idx = 0; idx < space; ++idx) {
      const auto& cell = row.at(idx);
      if (!cell.is_number()) throw ParseError("payoffs must be numbers");
      const double v = cell.get<double>();
      if (v < 0.0 || v > 1.0) throw ParseError("payoffs must lie in [0, 1]");
      tensor[static_cast<std::uint64_t>(i) * space + idx] = v;
    }
  }
  std::optional<double> lambda;
  if (doc.contains("lambda")) lambda = require_field<double>(doc, "lambda");
  try {
    return make_explicit_game(n, m, std::move(tensor), lambda);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Game parse_game_json(const std::string& text) { return game_from_json(parse_document(text)); }

Game load_game_file(const std::string& path) { return parse_game_json(read_file(path)); }

std::string game_to_json(const Game& g) {
  if (!g.descriptor().empty()) return g.descriptor();
  const int n = g.players();
  const int m = g.actions();
  const std::uint64_t space = require_enumerable(n, m);
  json doc;
  doc["n"] = n;
  doc["m"] = m;
  if (g.declared_lipschitz()) doc["lambda"] = *g.declared_lipschitz();
  json payoffs = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    PureProfile a(std::vector<int>(n, 0));
    (void)space;
    do {
      row.push_back(g.payoff(i, a));
    } while (next_profile(a, m));
    payoffs.push_back(std::move(row));
  }
  doc["payoffs"] = std::move(payoffs);
  return doc.dump();
}

AnyProfile parse_profile_json(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("profile document must be an object");
  const std::string type = require_field<std::string>(doc, "type");
  if (type == "pure") {
    if (!doc.contains("actions")) throw ParseError("pure profile needs actions");
    return profile_from_labels(doc.at("actions"));
  }
  if (type == "mixed") {
    if (!doc.contains("dists") || !doc.at("dists").is_array()) {
      throw ParseError("mixed profile needs dists");
    }
    MixedProfile p;
    for (const auto& row : doc.at("dists")) {
      if (!row.is_array()) throw ParseError("each dist must be an array");
      std::vector<double> r;
      for (const auto& x : row) {
        if (!x.is_number()) throw ParseError("probabilities must be numbers");
        r.push_back(x.get<double>());
      }
      p.dists.push_back(std::move(r));
    }
    return p;
  }
  if (type == "correlated") {
    if (!doc.contains("support") || !doc.at("support").is_array()) {
      throw ParseError("correlated profile needs a support");
    }
    CorrelatedDistribution X;
    for (const auto& item : doc.at("support")) {
      if (!item.contains("profile") || !item.contains("prob")) {
        throw ParseError("support entries need profile and prob");
      }
      X.support[profile_from_labels(item.at("profile"))] = item.at("prob").get<double>();
    }
    return X;
  }
  throw ParseError("unknown profile type '" + type + "'");
}

AnyProfile load_profile_file(const std::string& path) {
  return parse_profile_json(read_file(path));
}

std::string profile_to_json(const AnyProfile& profile) {
  json doc;
  if (const auto* a = std::get_if<PureProfile>(&profile)) {
    doc["type"] = "pure";
    doc["actions"] = profile_to_labels(*a);
  } else if (const auto* p = std::get_if<MixedProfile>(&profile)) {
    doc["type"] = "mixed";
    doc["dists"] = p->dists;
  } else {
    const auto& X = std::get<CorrelatedDistribution>(profile);
    doc["type"] = "correlated";
    json support = json::array();
    for (const auto& [a, prob] : X.support) {
      support.push_back({{"profile", profile_to_labels(a)}, {"prob", prob}});
    }
    doc["support"] = std::move(support);
  }
  return doc.dump();
}

std::string query_log_to_json(const QueryLog& log) {
  json arr = json::array();
  for (const auto& entry : log) {
    arr.push_back({{"profile", profile_to_labels(entry.profile)}, {"reported", entry.reported}});
  }
  return arr.dump();
}

std::string ledger_to_json(const QueryLedger& ledger) {
  json doc;
  doc["profile_count"] = ledger.profile_count();
  doc["dist_count"] = ledger.dist_count();
  json arr = json::array();
  for (const auto& entry : ledger.log()) {
    arr.push_back({{"profile", profile_to_labels(entry.profile)}, {"reported", entry.reported}});
  }
  doc["log"] = std::move(arr);
  return doc.dump();
}

std::string equilibrium_check_to_json(const EquilibriumCheck& check, double epsilon) {
  json doc;
  doc["satisfied"] = check.satisfied;
  doc["epsilon"] = epsilon;
  doc["concept"] = concept_name(check.report.kind);
  doc["regret"] = check.report.regret;
  doc["max_regret"] = check.report.max_regret();
  if (!check.report.best_action.empty()) {
    json arr = json::array();
    for (int j : check.report.best_action) arr.push_back(j + 1);
    doc["best_action"] = std::move(arr);
  }
  if (!check.report.best_deviation.empty()) {
    json arr = json::array();
    for (const auto& dev : check.report.best_deviation) {
      json phi = json::array();
      for (int j : dev.phi) phi.push_back(j + 1);
      arr.push_back(std::move(phi));
    }
    doc["best_deviation"] = std::move(arr);
  }
  return doc.dump();
}

std::string adversary_outcome_to_json(const AdversaryOutcome& out) {
  json doc;
  doc["k"] = out.pair_count;
  doc["m"] = out.actions;
  doc["n"] = out.players;
  doc["alpha"] = out.alpha;
  doc["epsilon"] = out.epsilon;
  doc["rho"] = out.rho_value;
  doc["bound_q"] = out.bound_q;
  doc["scale"] = out.scale;
  doc["q"] = out.q;
  doc["favored_action"] = out.favored_action + 1;
  json phi = json::array();
  for (int j : out.deviation.phi) phi.push_back(j + 1);
  doc["deviation"] = std::move(phi);
  doc["regret_achieved"] = out.regret_achieved;
  doc["u_phi"] = out.u_phi;
  doc["u_base"] = out.u_base;
  doc["base_ace"] = out.base_ace;
  doc["appendix_bounds_ok"] = out.appendix_bounds_ok;
  doc["dichotomy_ok"] = out.dichotomy_ok;
  doc["verdict"] = verdict_name(out.verdict);
  json support = json::array();
  for (const auto& [a, prob] : out.output.support) {
    support.push_back({{"profile", profile_to_labels(a)}, {"prob", prob}});
  }
  doc["output"] = std::move(support);
  json log = json::array();
  for (const auto& entry : out.log) {
    log.push_back({{"profile", profile_to_labels(entry.profile)}, {"reported", entry.reported}});
  }
  doc["log"] = std::move(log);
  return doc.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ParseError("failed writing '" + path + "'");
}

}  // namespace liplab
