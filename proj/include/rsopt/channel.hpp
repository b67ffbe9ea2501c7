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

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rsopt {

/// Immutable problem instance: channels, noise powers and the power model.
/// All quantities are stored in linear units (watts); dB conversions happen
/// at construction time only.
struct Scenario {
  Eigen::MatrixXcd H;      ///< Nt x K, column k is user k's channel h_k
  Eigen::VectorXd sigma2;  ///< per-user noise power [W], all > 0
  double p_max = 0.0;      ///< transmit power budget [W]
  double p_circuit = 0.0;  ///< static circuit power P_c [W]
  double chi = 0.0;        ///< rate-dependent power slope [W / (bit/s/Hz)]
  std::map<std::string, std::string> labels;

  int nt() const { return static_cast<int>(H.rows()); }
  int users() const { return static_cast<int>(H.cols()); }

  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;
};

/// Parameters of the deterministic geometric (uniform linear array) channel.
struct GeometricChannelConfig {
  int nt = 4;
  std::vector<double> angles;  ///< AoD theta_k per user [rad]
  std::vector<double> gains;   ///< nu_k per user, dimensionless
  double spacing_over_wavelength = 0.5;  ///< d / lambda_c
};

/// Builds the ULA steering channel matrix: column k is
///   nu_k * [1, e^{j 2 pi (d/lambda) cos theta_k}, ..., e^{j 2 pi (d/lambda)(Nt-1) cos theta_k}]^T.
/// Throws std::invalid_argument on an empty or inconsistent config.
Eigen::MatrixXcd geometric_channels(const GeometricChannelConfig& cfg);

/// i.i.d. circularly-symmetric complex Gaussian entries with unit variance
/// (real/imag parts each of variance 1/2). Uses a fixed, portable generator
/// (mt19937_64 + Box-Muller) so a seed yields the same matrix on every
/// platform.
Eigen::MatrixXcd random_cscg_channels(int nt, int users, std::uint64_t seed);

/// p_max = sigma2 * 10^(snr_db / 10)
double snr_db_to_pmax(double snr_db, double sigma2);
/// Inverse of snr_db_to_pmax.
double pmax_to_snr_db(double p_max, double sigma2);

/// 10^(db/10). Used for P_c given in dBW and, following the convention of
/// the reference experiments, also for noise powers quoted in dBm
/// (-20 dBm maps to 0.01 W so that the SNR definition and the absolute
/// power model line up).
double db_to_linear(double db);

/// Assembles a Scenario with a shared per-user noise power and validates it.
Scenario make_scenario(Eigen::MatrixXcd H, double sigma2_w, double p_max_w,
                       double p_circuit_w, double chi);

}  // namespace rsopt
