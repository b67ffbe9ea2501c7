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

#include "rsopt/channel.hpp"

namespace rsopt {

/// The decision variable: the family of precoders [f_c, f_1, ..., f_K]
/// stacked as the columns of an Nt x (K+1) complex matrix. Column 0 is the
/// common-stream precoder.
struct PrecoderSet {
  Eigen::MatrixXcd F;

  int nt() const { return static_cast<int>(F.rows()); }
  int users() const { return static_cast<int>(F.cols()) - 1; }

  Eigen::VectorXcd common() const { return F.col(0); }
  /// Private precoder of user k, k in [0, K).
  Eigen::VectorXcd private_col(int k) const { return F.col(k + 1); }

  double frobenius_sq() const { return F.squaredNorm(); }

  static PrecoderSet zeros(int nt, int users) {
    return PrecoderSet{Eigen::MatrixXcd::Zero(nt, users + 1)};
  }
};

/// Rates, power and efficiency of one precoder set. Stream rates are kept in
/// nats/s/Hz internally; the aggregated spectral efficiency is reported in
/// bit/s/Hz. See private_rate() for the unit convention.
struct RateReport {
  Eigen::VectorXd private_nats;         ///< length K
  Eigen::VectorXd common_per_user_nats; ///< length K
  double common_nats = 0.0;             ///< min over users
  double sum_se_bits = 0.0;             ///< (common + sum of privates) / ln 2
  double total_power_w = 0.0;
  double ee = 0.0;                      ///< (bit/s/Hz) / W
};

// Rate expressions are evaluated in NATS: the rate minorants used by the
// optimizer are first-order expansions of the natural logarithm, so keeping
// nats internally makes the surrogate algebra exact. Everything reported to
// the outside (SE, EE) is converted to bits at this layer.

/// ln(1 + |h_k^H f_k|^2 / (sigma_k^2 + sum_{i != k} |h_k^H f_i|^2)), nats.
/// Only private streams interfere; the common stream has been removed by SIC.
double private_rate(const PrecoderSet& F, const Scenario& s, int k);

/// Common-stream rate at user k with ALL private streams as interference, nats.
double common_rate_at_user(const PrecoderSet& F, const Scenario& s, int k);

/// min_k common_rate_at_user, nats.
double common_rate(const PrecoderSet& F, const Scenario& s);

/// System spectral efficiency in bit/s/Hz.
double sum_se(const PrecoderSet& F, const Scenario& s);

/// ||F||_F^2 + P_c + chi * se_bits. Throws std::invalid_argument for
/// negative se_bits.
double total_power(const PrecoderSet& F, const Scenario& s, double se_bits);

/// sum_se / total_power, in (bit/s/Hz)/W.
double energy_efficiency(const PrecoderSet& F, const Scenario& s);

enum class Approach { kWeightedSum, kWeightedPower };

/// Scalarized tradeoff objective in bit units:
///   weighted-sum:   w * EE + (1 - w) * SE / P_c
///   weighted-power: SE / (w * (||F||_F^2 + chi * SE) + P_c)
/// Throws std::invalid_argument when w is outside [0, 1].
double scalarized_objective(Approach approach, double w, const PrecoderSet& F,
                            const Scenario& s);

RateReport evaluate(const PrecoderSet& F, const Scenario& s);

}  // namespace rsopt
