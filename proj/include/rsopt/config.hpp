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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsopt/optimizer.hpp"

namespace rsopt {

/// "0.35", "pi", "pi/9", "2pi/9", "-pi/6", "0.5pi" -> radians.
/// Throws std::invalid_argument on anything else.
double parse_angle(const std::string& text);

/// One experiment: a scenario template plus the sweep grids.
struct ExperimentConfig {
  // scenario template
  std::string channel_kind = "geometric";  ///< "geometric" or "cscg"
  int nt = 4;
  int users = 2;                         ///< cscg user count; geometric uses angles
  std::vector<double> angles = {};       ///< radians (parsed from config text)
  std::vector<double> gains = {};        ///< defaults to all-ones
  double spacing_over_wavelength = 0.5;
  double sigma2_dbm = -20.0;
  double pc_dbw = 5.0;
  double chi = 0.1;

  // sweep grids
  std::vector<std::string> methods = {"RS-SOCP", "RS-GCP", "NoRS-GCP", "RS-D-MMSE"};
  std::vector<Approach> approaches = {Approach::kWeightedSum};
  std::vector<double> w_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> snr_grid = {20.0};
  std::vector<double> chi_grid = {};     ///< empty -> {chi}
  int trials = 1;
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";
  int threads = 0;                       ///< 0 = auto
  RunOptions run;

  int user_count() const {
    return channel_kind == "geometric" ? static_cast<int>(angles.size()) : users;
  }
  void validate() const;  // throws std::invalid_argument

  /// Parses the JSON config text (see README for the schema). Unknown keys
  /// are rejected to catch typos.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  std::string to_json_text() const;  ///< canonical echo for the manifest
};

/// Scenario instance for one grid point. Geometric channels are the same
/// for every trial; CSCG channels are drawn from `seed`.
Scenario scenario_for(const ExperimentConfig& cfg, double snr_db, double chi,
                      std::uint64_t seed);

}  // namespace rsopt
