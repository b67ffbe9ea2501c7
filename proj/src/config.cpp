// SPDX-License-Identifier: Apache-2.0
//
// rsopt: SE/EE tradeoff simulator for rate-splitting multiple access
// precoding in the multi-antenna downlink.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rsopt/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rsopt {

using nlohmann::json;

double parse_angle(const std::string& text) {
  static const std::regex with_pi(
      R"(^\s*([+-])?\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)",
      std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, with_pi)) {
    double value = std::numbers::pi;
    if (m[2].matched) value *= std::stod(m[2].str());
    if (m[3].matched) {
      const double denom = std::stod(m[3].str());
      if (denom == 0.0) throw std::invalid_argument("parse_angle: division by zero in '" + text + "'");
      value /= denom;
    }
    if (m[1].matched && m[1].str() == "-") value = -value;
    return value;
  }
  try {
    size_t pos = 0;
    const double value = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("parse_angle: cannot parse '" + text + "'");
}

void ExperimentConfig::validate() const {
  if (channel_kind != "geometric" && channel_kind != "cscg") {
    throw std::invalid_argument("config: channel must be 'geometric' or 'cscg'");
  }
  if (nt < 1) throw std::invalid_argument("config: nt must be >= 1");
  if (user_count() < 1) throw std::invalid_argument("config: need at least one user");
  if (channel_kind == "geometric" && !gains.empty() && gains.size() != angles.size()) {
    throw std::invalid_argument("config: gains length must match angles");
  }
  if (methods.empty()) throw std::invalid_argument("config: methods grid is empty");
  if (approaches.empty()) throw std::invalid_argument("config: approaches grid is empty");
  if (w_grid.empty()) throw std::invalid_argument("config: w grid is empty");
  if (snr_grid.empty()) throw std::invalid_argument("config: snr grid is empty");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  for (double w : w_grid) {
    if (w < 0.0 || w > 1.0) throw std::invalid_argument("config: w values must lie in [0, 1]");
  }
  run.validate();
}

namespace {

std::vector<double> parse_angle_array(const json& arr) {
  std::vector<double> out;
  for (const auto& v : arr) {
    if (v.is_string()) {
      out.push_back(parse_angle(v.get<std::string>()));
    } else {
      out.push_back(v.get<double>());
    }
  }
  return out;
}

Approach parse_approach(const std::string& name) {
  if (name == "weighted_sum") return Approach::kWeightedSum;
  if (name == "weighted_power") return Approach::kWeightedPower;
  throw std::invalid_argument("config: unknown approach '" + name + "'");
}

const char* approach_name(Approach a) {
  return a == Approach::kWeightedSum ? "weighted_sum" : "weighted_power";
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  const json root = json::parse(text);
  ExperimentConfig cfg;
  cfg.angles = {0.0, std::numbers::pi / 9.0};

  reject_unknown_keys(root, {"scenario", "sweep"}, "top level");
  if (root.contains("scenario")) {
    const json& sc = root["scenario"];
    reject_unknown_keys(sc,
                        {"channel", "nt", "users", "angles", "gains",
                         "spacing_over_wavelength", "sigma2_dbm", "pc_dbw", "chi"},
                        "scenario");
    if (sc.contains("channel")) cfg.channel_kind = sc["channel"].get<std::string>();
    if (sc.contains("nt")) cfg.nt = sc["nt"].get<int>();
    if (sc.contains("users")) cfg.users = sc["users"].get<int>();
    if (sc.contains("angles")) cfg.angles = parse_angle_array(sc["angles"]);
    if (sc.contains("gains")) cfg.gains = sc["gains"].get<std::vector<double>>();
    if (sc.contains("spacing_over_wavelength")) {
      cfg.spacing_over_wavelength = sc["spacing_over_wavelength"].get<double>();
    }
    if (sc.contains("sigma2_dbm")) cfg.sigma2_dbm = sc["sigma2_dbm"].get<double>();
    if (sc.contains("pc_dbw")) cfg.pc_dbw = sc["pc_dbw"].get<double>();
    if (sc.contains("chi")) cfg.chi = sc["chi"].get<double>();
  }
  if (root.contains("sweep")) {
    const json& sw = root["sweep"];
    reject_unknown_keys(sw,
                        {"methods", "approaches", "w", "snr_db", "chi", "trials", "seed",
                         "out", "threads", "tol", "max_iters", "timer"},
                        "sweep");
    if (sw.contains("methods")) cfg.methods = sw["methods"].get<std::vector<std::string>>();
    if (sw.contains("approaches")) {
      cfg.approaches.clear();
      for (const auto& a : sw["approaches"]) cfg.approaches.push_back(parse_approach(a));
    }
    if (sw.contains("w")) cfg.w_grid = sw["w"].get<std::vector<double>>();
    if (sw.contains("snr_db")) cfg.snr_grid = sw["snr_db"].get<std::vector<double>>();
    if (sw.contains("chi")) cfg.chi_grid = sw["chi"].get<std::vector<double>>();
    if (sw.contains("trials")) cfg.trials = sw["trials"].get<int>();
    if (sw.contains("seed")) cfg.master_seed = sw["seed"].get<std::uint64_t>();
    if (sw.contains("out")) cfg.out_dir = sw["out"].get<std::string>();
    if (sw.contains("threads")) cfg.threads = sw["threads"].get<int>();
    if (sw.contains("tol")) cfg.run.tol = sw["tol"].get<double>();
    if (sw.contains("max_iters")) cfg.run.max_iters = sw["max_iters"].get<int>();
    if (sw.contains("timer")) cfg.run.timer = sw["timer"].get<bool>();
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string ExperimentConfig::to_json_text() const {
  json sc;
  sc["channel"] = channel_kind;
  sc["nt"] = nt;
  if (channel_kind == "geometric") {
    sc["angles"] = angles;
    if (!gains.empty()) sc["gains"] = gains;
    sc["spacing_over_wavelength"] = spacing_over_wavelength;
  } else {
    sc["users"] = users;
  }
  sc["sigma2_dbm"] = sigma2_dbm;
  sc["pc_dbw"] = pc_dbw;
  sc["chi"] = chi;

  json sw;
  sw["methods"] = methods;
  std::vector<std::string> appr;
  for (Approach a : approaches) appr.emplace_back(approach_name(a));
  sw["approaches"] = appr;
  sw["w"] = w_grid;
  sw["snr_db"] = snr_grid;
  if (!chi_grid.empty()) sw["chi"] = chi_grid;
  sw["trials"] = trials;
  sw["seed"] = master_seed;
  sw["tol"] = run.tol;
  sw["max_iters"] = run.max_iters;
  sw["timer"] = run.timer;

  json root;
  root["scenario"] = sc;
  root["sweep"] = sw;
  return root.dump(2);
}

Scenario scenario_for(const ExperimentConfig& cfg, double snr_db, double chi,
                      std::uint64_t seed) {
  const double sigma2 = db_to_linear(cfg.sigma2_dbm);
  Eigen::MatrixXcd H;
  if (cfg.channel_kind == "geometric") {
    GeometricChannelConfig gc;
    gc.nt = cfg.nt;
    gc.angles = cfg.angles;
    gc.gains = cfg.gains.empty() ? std::vector<double>(cfg.angles.size(), 1.0) : cfg.gains;
    gc.spacing_over_wavelength = cfg.spacing_over_wavelength;
    H = geometric_channels(gc);
  } else {
    H = random_cscg_channels(cfg.nt, cfg.users, seed);
  }
  Scenario s = make_scenario(std::move(H), sigma2, snr_db_to_pmax(snr_db, sigma2),
                             db_to_linear(cfg.pc_dbw), chi);
  s.labels["channel"] = cfg.channel_kind;
  return s;
}

}  // namespace rsopt
