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

#include "rsopt/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rsopt {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform doubles from raw 64-bit draws. u1 lies in (0,1] so that log(u1)
// is finite; u2 lies in [0,1).
double uniform_open_closed(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}
double uniform_closed_open(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}
}  // namespace

void Scenario::validate() const {
  if (H.rows() < 1 || H.cols() < 1) {
    throw std::invalid_argument("Scenario: need Nt >= 1 and K >= 1");
  }
  if (sigma2.size() != H.cols()) {
    throw std::invalid_argument("Scenario: sigma2 length must equal K");
  }
  if ((sigma2.array() <= 0.0).any()) {
    throw std::invalid_argument("Scenario: all noise powers must be > 0");
  }
  if (!(p_max > 0.0)) {
    throw std::invalid_argument("Scenario: p_max must be > 0");
  }
  if (!(p_circuit > 0.0)) {
    throw std::invalid_argument("Scenario: p_circuit must be > 0");
  }
  if (chi < 0.0) {
    throw std::invalid_argument("Scenario: chi must be >= 0");
  }
  if (!H.allFinite()) {
    throw std::invalid_argument("Scenario: channel entries must be finite");
  }
}

Eigen::MatrixXcd geometric_channels(const GeometricChannelConfig& cfg) {
  const int users = static_cast<int>(cfg.angles.size());
  if (cfg.nt < 1 || users < 1) {
    throw std::invalid_argument("geometric_channels: need Nt >= 1 and K >= 1");
  }
  if (cfg.gains.size() != cfg.angles.size()) {
    throw std::invalid_argument("geometric_channels: angles/gains length mismatch");
  }
  if (!(cfg.spacing_over_wavelength > 0.0)) {
    throw std::invalid_argument("geometric_channels: spacing must be > 0");
  }

  Eigen::MatrixXcd h(cfg.nt, users);
  for (int k = 0; k < users; ++k) {
    const double ramp = kTwoPi * cfg.spacing_over_wavelength * std::cos(cfg.angles[k]);
    for (int n = 0; n < cfg.nt; ++n) {
      h(n, k) = cfg.gains[k] * std::polar(1.0, ramp * n);
    }
  }
  return h;
}

Eigen::MatrixXcd random_cscg_channels(int nt, int users, std::uint64_t seed) {
  if (nt < 1 || users < 1) {
    throw std::invalid_argument("random_cscg_channels: need Nt >= 1 and K >= 1");
  }
  std::mt19937_64 gen(seed);
  Eigen::MatrixXcd h(nt, users);
  for (int k = 0; k < users; ++k) {
    for (int n = 0; n < nt; ++n) {
      // Box-Muller; radius scaled for total unit variance per entry.
      const double u1 = uniform_open_closed(gen);
      const double u2 = uniform_closed_open(gen);
      const double r = std::sqrt(-std::log(u1));
      h(n, k) = std::complex<double>(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
    }
  }
  return h;
}

double snr_db_to_pmax(double snr_db, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("snr_db_to_pmax: sigma2 must be > 0");
  }
  return sigma2 * std::pow(10.0, snr_db / 10.0);
}

double pmax_to_snr_db(double p_max, double sigma2) {
  if (!(sigma2 > 0.0) || !(p_max > 0.0)) {
    throw std::invalid_argument("pmax_to_snr_db: arguments must be > 0");
  }
  return 10.0 * std::log10(p_max / sigma2);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Scenario make_scenario(Eigen::MatrixXcd H, double sigma2_w, double p_max_w,
                       double p_circuit_w, double chi) {
  Scenario s;
  s.sigma2 = Eigen::VectorXd::Constant(H.cols(), sigma2_w);
  s.H = std::move(H);
  s.p_max = p_max_w;
  s.p_circuit = p_circuit_w;
  s.chi = chi;
  s.validate();
  return s;
}

}  // namespace rsopt
