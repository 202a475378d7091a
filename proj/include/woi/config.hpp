#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "woi/contour.hpp"
#include "woi/root_datum.hpp"

// Run configuration: a JSON document with a versioned schema field that
// resolves to a fully specified plan. Unknown keys are rejected.

namespace woi {

inline constexpr const char* kConfigSchema = "woi-config/1";
inline constexpr const char* kReportSchema = "woi-report/1";

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{"hull-limit", "trand",      "tdisc",   "nL-independence",
                                          "residue-1d", "lemma-shift", "tempext", "examples"};
  return s;
}

struct Config {
  std::string group = "A2";
  std::optional<RatMat> gram;  // override of the form on a_0^*
  std::vector<std::string> suites;
  std::vector<std::string> densities{"model_plancherel(1)", "model_normalizing(2)"};
  std::vector<TestFunction> battery = default_battery();
  TestFunction tempext_phi = TestFunction::gauss_poly({1, 1, rat(1, 2)}, rat(1, 4));
  TestFunction shift_phi = TestFunction::gauss_poly({1, 1, rat(1, 2)}, 1);
  double residue_tolerance = 1e-6;
  double lemma_shift_tolerance = 1e-4;
  double tempext_threshold = 0.5;
  std::vector<double> eps_ladder{0.1, 0.2};
  std::vector<double> delta_ladder{1e-1, 1e-2, 1e-3};
  std::vector<double> tempext_deltas{1e-2, 1e-4, 1e-6};
  int hull_samples = 25;
  unsigned seed = 1;
  std::string output;  // report file name; empty means report-<group>.json
};

namespace detail {

inline Rational json_rational(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::InvalidArgument, where + ": expected an integer or a rational string");
}

inline std::vector<double> json_ladder(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidArgument, where + ": expected a nonempty array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number() || x.get<double>() <= 0) throw Error(ErrorKind::InvalidArgument, where + ": entries must be positive");
    out.push_back(x.get<double>());
  }
  return out;
}

inline TestFunction json_test_function(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "test function: expected an object");
  for (const auto& [k, v] : j.items())
    if (k != "poly" && k != "scale") throw Error(ErrorKind::InvalidArgument, "test function: unknown key " + k);
  std::vector<Rational> p;
  for (const auto& c : j.at("poly")) p.push_back(json_rational(c, "test function coefficient"));
  return TestFunction::gauss_poly(p, json_rational(j.value("scale", nlohmann::json(1)), "test function scale"));
}

inline nlohmann::json json_of(const TestFunction& f) {
  nlohmann::json p = nlohmann::json::array();
  for (const auto& c : f.poly) p.push_back(c.get_str());
  return {{"poly", p}, {"scale", f.scale.get_str()}};
}

}  // namespace detail

/// Parse a config document; throws InvalidArgument with a diagnostic.
inline Config parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");
  static const std::set<std::string> keys{"schema",     "group",   "gram",      "suites", "densities",
                                          "battery",    "tempext_phi", "shift_phi", "tolerances", "ladders", "hull",
                                          "output"};
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw Error(ErrorKind::InvalidArgument, "unknown config key: " + k);
  if (j.value("schema", std::string()) != kConfigSchema)
    throw Error(ErrorKind::InvalidArgument, std::string("config schema must be \"") + kConfigSchema + "\"");
  Config c;
  if (j.contains("group")) c.group = j.at("group").get<std::string>();
  if (j.contains("gram")) {
    const auto& g = j.at("gram");
    std::size_t n = g.size();
    RatMat m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (g[r].size() != n) throw Error(ErrorKind::InvalidArgument, "gram must be square");
      for (std::size_t s = 0; s < n; ++s) m(r, s) = detail::json_rational(g[r][s], "gram entry");
    }
    c.gram = m;
  }
  if (j.contains("suites")) {
    for (const auto& s : j.at("suites")) {
      std::string name = s.get<std::string>();
      if (name == "all") {
        c.suites = known_suites();
        break;
      }
      if (std::find(known_suites().begin(), known_suites().end(), name) == known_suites().end())
        throw Error(ErrorKind::InvalidArgument, "unknown suite: " + name);
      if (std::find(c.suites.begin(), c.suites.end(), name) == c.suites.end()) c.suites.push_back(name);
    }
  }
  if (j.contains("densities")) {
    c.densities.clear();
    for (const auto& s : j.at("densities")) {
      c.densities.push_back(s.get<std::string>());
      parse_density(c.densities.back());  // validate now
    }
  }
  if (j.contains("battery")) {
    c.battery.clear();
    for (const auto& f : j.at("battery")) c.battery.push_back(detail::json_test_function(f));
  }
  if (j.contains("tempext_phi")) c.tempext_phi = detail::json_test_function(j.at("tempext_phi"));
  if (j.contains("shift_phi")) c.shift_phi = detail::json_test_function(j.at("shift_phi"));
  if (j.contains("tolerances")) {
    for (const auto& [k, v] : j.at("tolerances").items()) {
      if (!v.is_number() || v.get<double>() <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance " + k + " must be positive");
      if (k == "residue") c.residue_tolerance = v;
      else if (k == "lemma_shift") c.lemma_shift_tolerance = v;
      else if (k == "tempext_growth") c.tempext_threshold = v;
      else throw Error(ErrorKind::InvalidArgument, "unknown tolerance: " + k);
    }
  }
  if (j.contains("ladders")) {
    for (const auto& [k, v] : j.at("ladders").items()) {
      if (k == "eps") c.eps_ladder = detail::json_ladder(v, "ladders.eps");
      else if (k == "delta") c.delta_ladder = detail::json_ladder(v, "ladders.delta");
      else if (k == "tempext_delta") c.tempext_deltas = detail::json_ladder(v, "ladders.tempext_delta");
      else throw Error(ErrorKind::InvalidArgument, "unknown ladder: " + k);
    }
    if (c.delta_ladder.size() != 3) throw Error(ErrorKind::InvalidArgument, "ladders.delta needs exactly three entries");
  }
  if (j.contains("hull")) {
    for (const auto& [k, v] : j.at("hull").items()) {
      if (k == "samples") c.hull_samples = v.get<int>();
      else if (k == "seed") c.seed = v.get<unsigned>();
      else throw Error(ErrorKind::InvalidArgument, "unknown hull key: " + k);
    }
    if (c.hull_samples < 0) throw Error(ErrorKind::InvalidArgument, "hull.samples must be nonnegative");
  }
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  return c;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline RootDatum build_datum(const Config& c) { return build_root_system(c.group, c.gram); }

/// The resolved plan as it is embedded in reports.
inline nlohmann::json config_json(const Config& c) {
  nlohmann::json j;
  j["schema"] = kConfigSchema;
  j["group"] = c.group;
  j["suites"] = c.suites;
  j["densities"] = c.densities;
  j["battery"] = nlohmann::json::array();
  for (const auto& f : c.battery) j["battery"].push_back(detail::json_of(f));
  j["tempext_phi"] = detail::json_of(c.tempext_phi);
  j["shift_phi"] = detail::json_of(c.shift_phi);
  j["tolerances"] = {{"residue", c.residue_tolerance},
                     {"lemma_shift", c.lemma_shift_tolerance},
                     {"tempext_growth", c.tempext_threshold}};
  j["ladders"] = {{"eps", c.eps_ladder}, {"delta", c.delta_ladder}, {"tempext_delta", c.tempext_deltas}};
  j["hull"] = {{"samples", c.hull_samples}, {"seed", c.seed}};
  return j;
}

}  // namespace woi
