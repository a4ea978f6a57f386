#include "sicnet/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sicnet/errors.hpp"

namespace sicnet {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

}  // namespace

NetworkConfig parse_network_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(doc, {"alpha", "mu", "mu_j", "channels", "tiers"}, "config");
  for (const char* key : {"alpha", "mu", "tiers"}) {
    if (!doc.contains(key)) throw ConfigError(std::string("config: missing key '") + key + "'");
  }

  NetworkConfig cfg;
  cfg.alpha = number(doc, "alpha", "config");
  cfg.mu = number(doc, "mu", "config");
  if (doc.contains("mu_j") && doc.contains("channels")) {
    throw ConfigError("config: give either 'mu_j' or 'channels', not both");
  }
  if (doc.contains("channels")) {
    const auto& ch = doc.at("channels");
    if (!ch.is_number_integer() || ch.get<long long>() < 1) {
      throw ConfigError("config: 'channels' must be a positive integer");
    }
    cfg.mu_j = cfg.mu / static_cast<double>(ch.get<long long>());
  } else {
    cfg.mu_j = number_or(doc, "mu_j", cfg.mu, "config");
  }

  const auto& tiers = doc.at("tiers");
  if (!tiers.is_array()) throw ConfigError("config: 'tiers' must be an array");
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    const std::string where = "config: tiers[" + std::to_string(i) + "]";
    const auto& t = tiers[i];
    if (!t.is_object()) throw ConfigError(where + " must be an object");
    reject_unknown(t, {"lambda", "p_dl", "q_ul", "bias"}, where);
    if (!t.contains("lambda")) throw ConfigError(where + ": missing key 'lambda'");
    TierParams tp;
    tp.lambda = number(t, "lambda", where);
    tp.p_dl = number_or(t, "p_dl", 1.0, where);
    tp.q_ul = number_or(t, "q_ul", 1.0, where);
    tp.bias = number_or(t, "bias", 1.0, where);
    cfg.tiers.push_back(tp);
  }
  cfg.validate();
  return cfg;
}

NetworkConfig load_network_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string network_config_to_json(const NetworkConfig& cfg, int indent) {
  json doc;
  doc["alpha"] = cfg.alpha;
  doc["mu"] = cfg.mu;
  doc["mu_j"] = cfg.mu_j;
  doc["tiers"] = json::array();
  for (const auto& t : cfg.tiers) {
    doc["tiers"].push_back({{"lambda", t.lambda}, {"p_dl", t.p_dl}, {"q_ul", t.q_ul}, {"bias", t.bias}});
  }
  return doc.dump(indent);
}

}  // namespace sicnet
