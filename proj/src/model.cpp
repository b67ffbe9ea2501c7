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

#include "rsopt/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsopt {

namespace {

double gain_sq(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& F, int k, int col) {
  return std::norm(H.col(k).dot(F.col(col)));  // |h_k^H f_col|^2; dot conjugates the left side
}

}  // namespace

double private_rate(const PrecoderSet& F, const Scenario& s, int k) {
  const int users = s.users();
  double interference = 0.0;
  for (int i = 0; i < users; ++i) {
    if (i == k) continue;
    interference += gain_sq(s.H, F.F, k, i + 1);
  }
  const double signal = gain_sq(s.H, F.F, k, k + 1);
  return std::log1p(signal / (s.sigma2[k] + interference));
}

double common_rate_at_user(const PrecoderSet& F, const Scenario& s, int k) {
  const int users = s.users();
  double interference = 0.0;
  for (int i = 0; i < users; ++i) {
    interference += gain_sq(s.H, F.F, k, i + 1);
  }
  const double signal = gain_sq(s.H, F.F, k, 0);
  return std::log1p(signal / (s.sigma2[k] + interference));
}

double common_rate(const PrecoderSet& F, const Scenario& s) {
  double r = common_rate_at_user(F, s, 0);
  for (int k = 1; k < s.users(); ++k) {
    r = std::min(r, common_rate_at_user(F, s, k));
  }
  return r;
}

double sum_se(const PrecoderSet& F, const Scenario& s) {
  double nats = common_rate(F, s);
  for (int k = 0; k < s.users(); ++k) {
    nats += private_rate(F, s, k);
  }
  return nats / std::numbers::ln2;
}

double total_power(const PrecoderSet& F, const Scenario& s, double se_bits) {
  if (se_bits < 0.0) {
    throw std::invalid_argument("total_power: se_bits must be >= 0");
  }
  return F.frobenius_sq() + s.p_circuit + s.chi * se_bits;
}

double energy_efficiency(const PrecoderSet& F, const Scenario& s) {
  const double se = sum_se(F, s);
  return se / total_power(F, s, se);
}

double scalarized_objective(Approach approach, double w, const PrecoderSet& F,
                            const Scenario& s) {
  if (w < 0.0 || w > 1.0) {
    throw std::invalid_argument("scalarized_objective: w must lie in [0, 1]");
  }
  const double se = sum_se(F, s);
  switch (approach) {
    case Approach::kWeightedSum:
      return w * se / total_power(F, s, se) + (1.0 - w) * se / s.p_circuit;
    case Approach::kWeightedPower:
      return se / (w * (F.frobenius_sq() + s.chi * se) + s.p_circuit);
  }
  throw std::logic_error("scalarized_objective: unknown approach");
}

RateReport evaluate(const PrecoderSet& F, const Scenario& s) {
  const int users = s.users();
  RateReport rep;
  rep.private_nats.resize(users);
  rep.common_per_user_nats.resize(users);
  for (int k = 0; k < users; ++k) {
    rep.private_nats[k] = private_rate(F, s, k);
    rep.common_per_user_nats[k] = common_rate_at_user(F, s, k);
  }
  rep.common_nats = rep.common_per_user_nats.minCoeff();
  rep.sum_se_bits = (rep.common_nats + rep.private_nats.sum()) / std::numbers::ln2;
  rep.total_power_w = total_power(F, s, rep.sum_se_bits);
  rep.ee = rep.sum_se_bits / rep.total_power_w;
  return rep;
}

}  // namespace rsopt
