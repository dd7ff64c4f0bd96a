#include "qmaint/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

#include "qmaint/errors.hpp"

namespace qmaint {

namespace {

using nlohmann::json;

const std::set<std::string> kStageKeys{"d", "em", "ei", "c", "m", "i", "C", "M", "I"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required key");
  if (!it->is_number()) fail(path + "." + key, "expected a number");
  return it->get<double>();
}

StageParams parse_stage(const json& obj, const std::string& path) {
  reject_unknown(obj, kStageKeys, path);
  StageParams s;
  s.defect_rate = number(obj, "d", path);
  s.effectiveness = {number(obj, "em", path), number(obj, "ei", path)};
  s.variable = {number(obj, "c", path), number(obj, "m", path), number(obj, "i", path)};
  s.fixed = {number(obj, "C", path), number(obj, "M", path), number(obj, "I", path)};
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return s;
}

Reputation parse_reputation(const json& doc) {
  Reputation r{number(doc, "alpha", "$"), number(doc, "beta", "$")};
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    fail("$", e.what());
  }
  return r;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace

Chain parse_chain(const json& doc) {
  reject_unknown(doc, {"n", "X0", "alpha", "beta", "stages", "uniform"}, "$");
  const double n_raw = number(doc, "n", "$");
  if (n_raw < 1.0 || n_raw != static_cast<double>(static_cast<std::size_t>(n_raw))) {
    fail("$.n", "expected a whole number >= 1");
  }
  const auto n = static_cast<std::size_t>(n_raw);
  const double x0 = number(doc, "X0", "$");
  if (!(x0 > 0.0)) fail("$.X0", "must be > 0");
  const Reputation rep = parse_reputation(doc);

  const bool has_stages = doc.contains("stages");
  const bool has_uniform = doc.contains("uniform");
  if (has_stages == has_uniform) fail("$", "exactly one of 'stages' or 'uniform' is required");

  std::vector<StageParams> stages;
  if (has_uniform) {
    stages.assign(n, parse_stage(doc.at("uniform"), "$.uniform"));
  } else {
    const json& arr = doc.at("stages");
    if (!arr.is_array()) fail("$.stages", "expected an array");
    if (arr.size() != n) {
      fail("$.stages", "has " + std::to_string(arr.size()) + " entries but n = " +
                           std::to_string(n));
    }
    for (std::size_t k = 0; k < arr.size(); ++k) {
      stages.push_back(parse_stage(arr[k], "$.stages[" + std::to_string(k) + "]"));
    }
  }
  return Chain(std::move(stages), x0, rep);
}

LoadedChain load_chain_file(const std::filesystem::path& path) {
  json doc = read_json(path);
  Chain chain = parse_chain(doc);
  std::string hash = config_hash(chain_to_json(chain));
  return {std::move(chain), std::move(doc), "none", std::move(hash)};
}

json preset_document(std::string_view name) {
  if (name == "ref50") {
    return chain_to_json(ref50());
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (available: ref50)");
}

LoadedChain load_preset(std::string_view name) {
  json doc = preset_document(name);
  Chain chain = parse_chain(doc);
  std::string hash = config_hash(chain_to_json(chain));
  return {std::move(chain), std::move(doc), std::string(name), std::move(hash)};
}

json stage_to_json(const StageParams& s) {
  return json{{"d", s.defect_rate},       {"em", s.effectiveness.monitoring},
              {"ei", s.effectiveness.inspection}, {"c", s.variable.production},
              {"m", s.variable.monitoring}, {"i", s.variable.inspection},
              {"C", s.fixed.production},    {"M", s.fixed.monitoring},
              {"I", s.fixed.inspection}};
}

json chain_to_json(const Chain& chain) {
  json doc{{"n", chain.size()},
           {"X0", chain.initial_volume()},
           {"alpha", chain.reputation().alpha},
           {"beta", chain.reputation().beta}};
  const auto stages = chain.stages();
  bool uniform = true;
  for (const auto& s : stages) uniform = uniform && stage_to_json(s) == stage_to_json(stages[0]);
  if (uniform) {
    doc["uniform"] = stage_to_json(stages[0]);
  } else {
    json arr = json::array();
    for (const auto& s : stages) arr.push_back(stage_to_json(s));
    doc["stages"] = std::move(arr);
  }
  return doc;
}

json homogenized_to_json(const HomogenizedChain& h) {
  return json{{"N", h.stages},
              {"n_source", h.source_stages},
              {"X0", h.initial_volume},
              {"alpha", h.reputation.alpha},
              {"beta", h.reputation.beta},
              {"strategy", std::string(to_string(h.strategy))},
              {"d", h.defect_rate},
              {"em", h.effectiveness.monitoring},
              {"ei", h.effectiveness.inspection},
              {"c", h.variable.production},
              {"m", h.variable.monitoring},
              {"i", h.variable.inspection},
              {"C", h.fixed.production},
              {"M", h.fixed.monitoring},
              {"I", h.fixed.inspection}};
}

HomogenizedChain parse_homogenized(const json& doc) {
  std::set<std::string> allowed = kStageKeys;
  allowed.insert({"N", "n_source", "X0", "alpha", "beta", "strategy", "provenance"});
  reject_unknown(doc, allowed, "$");
  HomogenizedChain h;
  h.stages = number(doc, "N", "$");
  const double n_source = number(doc, "n_source", "$");
  if (n_source < 1.0 || n_source != static_cast<double>(static_cast<std::size_t>(n_source))) {
    fail("$.n_source", "expected a whole number >= 1");
  }
  h.source_stages = static_cast<std::size_t>(n_source);
  h.initial_volume = number(doc, "X0", "$");
  h.reputation = parse_reputation(doc);
  const auto it = doc.find("strategy");
  if (it == doc.end() || !it->is_string()) fail("$.strategy", "expected a strategy name");
  try {
    h.strategy = parse_strategy(it->get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail("$.strategy", e.what());
  }
  json params = json::object();
  for (const auto& key : kStageKeys) {
    if (doc.contains(key)) params[key] = doc.at(key);
  }
  const StageParams s = parse_stage(params, "$");
  h.defect_rate = s.defect_rate;
  h.effectiveness = s.effectiveness;
  h.variable = s.variable;
  h.fixed = s.fixed;
  try {
    h.validate();
  } catch (const std::invalid_argument& e) {
    fail("$", e.what());
  }
  return h;
}

HomogenizedChain load_homogenized_file(const std::filesystem::path& path) {
  return parse_homogenized(read_json(path));
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const json& doc) { return fnv1a_hex(doc.dump()); }

}  // namespace qmaint
