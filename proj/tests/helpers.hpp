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

#include <cmath>
#include <limits>
#include <vector>

#include "rsopt/channel.hpp"
#include "rsopt/conic.hpp"

namespace rsopt::testing {

// Reference experiment constants: Nt = 4, sigma2 = -20 dBm, P_c = 5 dBW.
inline Scenario paper_scenario(const std::vector<double>& angles, double snr_db,
                               double chi = 0.1) {
  GeometricChannelConfig cfg;
  cfg.nt = 4;
  cfg.angles = angles;
  cfg.gains.assign(angles.size(), 1.0);
  const double sigma2 = db_to_linear(-20.0);
  return make_scenario(geometric_channels(cfg), sigma2,
                       snr_db_to_pmax(snr_db, sigma2), db_to_linear(5.0), chi);
}

inline Scenario random_paper_scenario(int nt, int users, double snr_db, std::uint64_t seed,
                                      double chi = 0.1) {
  const double sigma2 = db_to_linear(-20.0);
  return make_scenario(random_cscg_channels(nt, users, seed), sigma2,
                       snr_db_to_pmax(snr_db, sigma2), db_to_linear(5.0), chi);
}

// Maximum violation of every row and cone of the program at z.
inline double max_violation(const conic::ConicProgram& p, const Eigen::VectorXd& z) {
  double viol = 0.0;
  for (const auto& row : p.linear_rows()) {
    const double v = row.expr.value(z);
    viol = std::max(viol, row.rel == conic::Relation::kLessEqual ? v - row.rhs
                                                                 : std::abs(v - row.rhs));
  }
  for (const auto& cone : p.cones()) {
    std::vector<double> s(cone.rows.size());
    for (size_t i = 0; i < cone.rows.size(); ++i) s[i] = cone.rows[i].value(z);
    switch (cone.kind) {
      case conic::ConeKind::kSoc: {
        double tail = 0.0;
        for (size_t i = 1; i < s.size(); ++i) tail += s[i] * s[i];
        viol = std::max(viol, std::sqrt(tail) - s[0]);
        break;
      }
      case conic::ConeKind::kRsoc: {
        double rest = 0.0;
        for (size_t i = 2; i < s.size(); ++i) rest += s[i] * s[i];
        viol = std::max({viol, -s[0], -s[1], rest - 2.0 * s[0] * s[1]});
        break;
      }
      case conic::ConeKind::kExp: {
        viol = std::max({viol, -s[1], -s[2]});
        if (s[1] > 0.0 && s[2] > 0.0) {
          viol = std::max(viol, s[0] - s[1] * std::log(s[2] / s[1]));
        }
        break;
      }
    }
  }
  return viol;
}

// Smallest slack across all rows and cones at z (positive means strictly
// interior everywhere).
inline double min_slack(const conic::ConicProgram& p, const Eigen::VectorXd& z) {
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& row : p.linear_rows()) {
    if (row.rel == conic::Relation::kLessEqual) {
      slack = std::min(slack, row.rhs - row.expr.value(z));
    }
  }
  for (const auto& cone : p.cones()) {
    std::vector<double> s(cone.rows.size());
    for (size_t i = 0; i < cone.rows.size(); ++i) s[i] = cone.rows[i].value(z);
    switch (cone.kind) {
      case conic::ConeKind::kSoc: {
        double tail = 0.0;
        for (size_t i = 1; i < s.size(); ++i) tail += s[i] * s[i];
        slack = std::min(slack, s[0] - std::sqrt(tail));
        break;
      }
      case conic::ConeKind::kRsoc: {
        double rest = 0.0;
        for (size_t i = 2; i < s.size(); ++i) rest += s[i] * s[i];
        slack = std::min({slack, s[0], s[1], 2.0 * s[0] * s[1] - rest});
        break;
      }
      case conic::ConeKind::kExp: {
        slack = std::min({slack, s[1], s[2]});
        if (s[1] > 0.0 && s[2] > 0.0) {
          slack = std::min(slack, s[1] * std::log(s[2] / s[1]) - s[0]);
        }
        break;
      }
    }
  }
  return slack;
}

}  // namespace rsopt::testing
