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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rsopt/channel.hpp"
#include "rsopt/model.hpp"

using namespace rsopt;

namespace {

// Scalar single-user scenario: h = 1, sigma2 = 1.
Scenario scalar_scenario(double p_c = 3.1623, double chi = 0.1) {
  Eigen::MatrixXcd h(1, 1);
  h(0, 0) = 1.0;
  return make_scenario(h, 1.0, 10.0, p_c, chi);
}

PrecoderSet scalar_precoders(std::complex<double> fc, std::complex<double> f1) {
  PrecoderSet F = PrecoderSet::zeros(1, 1);
  F.F(0, 0) = fc;
  F.F(0, 1) = f1;
  return F;
}

Scenario random_scenario(int nt, int users, std::uint64_t seed) {
  return make_scenario(random_cscg_channels(nt, users, seed), 0.01, 1.0, 3.1623, 0.1);
}

PrecoderSet random_precoders(const Scenario& s, std::uint64_t seed) {
  PrecoderSet F{random_cscg_channels(s.nt(), s.users() + 1, seed)};
  F.F *= std::sqrt(s.p_max / F.F.squaredNorm());
  return F;
}

}  // namespace

TEST_CASE("private rate: zero precoder and scalar formula") {
  const Scenario s = scalar_scenario();
  CHECK(private_rate(PrecoderSet::zeros(1, 1), s, 0) == 0.0);
  CHECK(private_rate(scalar_precoders(0.0, 1.0), s, 0) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("private rate: orthogonal users see no interference") {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  const Scenario s = make_scenario(h, 1.0, 4.0, 1.0, 0.0);

  PrecoderSet F = PrecoderSet::zeros(2, 2);
  F.F(0, 1) = std::sqrt(2.0);
  F.F(1, 2) = std::sqrt(2.0);

  // Hand oracle: ln(1 + 2/1) for both users.
  CHECK(private_rate(F, s, 0) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(private_rate(F, s, 1) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("common rate at user: scalar oracle and monotone scaling") {
  const Scenario s = scalar_scenario();
  CHECK(common_rate_at_user(PrecoderSet::zeros(1, 1), s, 0) == 0.0);
  // ln(1 + 1 / (1 + 1))
  CHECK(common_rate_at_user(scalar_precoders(1.0, 1.0), s, 0) ==
        doctest::Approx(std::log(1.5)).epsilon(1e-12));

  // With zero interference the rate is nondecreasing in the precoder scale.
  double prev = -1.0;
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    const double r = common_rate_at_user(scalar_precoders(alpha, 0.0), s, 0);
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("sum SE: scalar oracle in bits") {
  const Scenario s = scalar_scenario();
  CHECK(sum_se(PrecoderSet::zeros(1, 1), s) == 0.0);
  const double expected = (std::log(1.5) + std::numbers::ln2) / std::numbers::ln2;
  CHECK(sum_se(scalar_precoders(1.0, 1.0), s) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(1.585).epsilon(1e-3));
}

TEST_CASE("sum SE: identical users give identical common rates") {
  Eigen::MatrixXcd h(2, 2);
  h.col(0) << 1.0, std::complex<double>(0.0, 1.0);
  h.col(1) = h.col(0);
  const Scenario s = make_scenario(h, 1.0, 4.0, 1.0, 0.0);
  const PrecoderSet F{random_cscg_channels(2, 3, 5)};
  CHECK(common_rate_at_user(F, s, 0) == doctest::Approx(common_rate_at_user(F, s, 1)).epsilon(1e-15));
}

TEST_CASE("total power: arithmetic oracle") {
  const Scenario s = scalar_scenario(3.1623, 0.1);
  CHECK(total_power(PrecoderSet::zeros(1, 1), s, 0.0) == doctest::Approx(3.1623));
  CHECK(total_power(scalar_precoders(0.0, 1.0), s, 2.0) == doctest::Approx(4.3623).epsilon(1e-12));

  const Scenario s0 = scalar_scenario(3.1623, 0.0);
  CHECK(total_power(scalar_precoders(0.0, 1.0), s0, 2.0) == doctest::Approx(4.1623).epsilon(1e-12));
  CHECK_THROWS_AS(total_power(scalar_precoders(0.0, 1.0), s, -1.0), std::invalid_argument);
}

TEST_CASE("energy efficiency: scalar oracle and asymptotics") {
  const Scenario s = scalar_scenario();
  CHECK(energy_efficiency(PrecoderSet::zeros(1, 1), s) == 0.0);

  const PrecoderSet F = scalar_precoders(1.0, 1.0);
  const double se = sum_se(F, s);
  const double expected = se / (2.0 + 3.1623 + 0.1 * se);
  CHECK(energy_efficiency(F, s) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.2980).epsilon(1e-3));

  // EE decays once the transmit power dominates.
  Eigen::MatrixXcd h(1, 1);
  h(0, 0) = 1.0;
  const Scenario s_wide = make_scenario(h, 1.0, 1e7, 3.1623, 0.1);
  const PrecoderSet big = scalar_precoders(1000.0, 1000.0);
  CHECK(energy_efficiency(big, s_wide) < energy_efficiency(F, s_wide));
}

TEST_CASE("energy efficiency: invariant to per-column phase rotation") {
  const Scenario s = random_scenario(3, 2, 11);
  PrecoderSet F = random_precoders(s, 12);
  const double base = energy_efficiency(F, s);

  PrecoderSet rotated = F;
  rotated.F.col(0) *= std::polar(1.0, 0.9);
  rotated.F.col(1) *= std::polar(1.0, -2.1);
  rotated.F.col(2) *= std::polar(1.0, 0.4);
  CHECK(energy_efficiency(rotated, s) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("scalarized objective: weight endpoints and bounds") {
  const Scenario s = random_scenario(4, 2, 21);
  const PrecoderSet F = random_precoders(s, 22);

  const double se = sum_se(F, s);
  const double ee = energy_efficiency(F, s);
  CHECK(scalarized_objective(Approach::kWeightedSum, 0.0, F, s) ==
        doctest::Approx(se / s.p_circuit).epsilon(1e-12));
  CHECK(scalarized_objective(Approach::kWeightedSum, 1.0, F, s) ==
        doctest::Approx(ee).epsilon(1e-12));
  CHECK(scalarized_objective(Approach::kWeightedPower, 0.0, F, s) ==
        doctest::Approx(se / s.p_circuit).epsilon(1e-12));
  CHECK(scalarized_objective(Approach::kWeightedPower, 1.0, F, s) ==
        doctest::Approx(ee).epsilon(1e-12));

  const PrecoderSet z = PrecoderSet::zeros(4, 2);
  CHECK(scalarized_objective(Approach::kWeightedSum, 0.5, z, s) == 0.0);
  CHECK(scalarized_objective(Approach::kWeightedPower, 0.5, z, s) == 0.0);
  CHECK_THROWS_AS(scalarized_objective(Approach::kWeightedSum, 1.5, F, s), std::invalid_argument);
  CHECK_THROWS_AS(scalarized_objective(Approach::kWeightedPower, -0.1, F, s), std::invalid_argument);
}

TEST_CASE("SIC ordering: denominator gap is exactly the own-stream gain") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scenario s = random_scenario(3, 3, 100 + seed);
    const PrecoderSet F = random_precoders(s, 200 + seed);
    for (int k = 0; k < s.users(); ++k) {
      double denom_private = s.sigma2[k];
      for (int i = 0; i < s.users(); ++i) {
        if (i != k) denom_private += std::norm(s.H.col(k).dot(F.F.col(i + 1)));
      }
      double denom_common = s.sigma2[k];
      for (int i = 0; i < s.users(); ++i) {
        denom_common += std::norm(s.H.col(k).dot(F.F.col(i + 1)));
      }
      const double own = std::norm(s.H.col(k).dot(F.F.col(k + 1)));
      CHECK(std::abs(denom_common - denom_private - own) < 1e-12);
    }
  }
}

TEST_CASE("single-user sum SE is nondecreasing in the power scale") {
  const Scenario s = scalar_scenario();
  double prev = -1.0;
  for (double alpha : {0.0, 0.1, 0.4, 1.0, 1.8}) {
    const double se = sum_se(scalar_precoders(alpha, alpha), s);
    CHECK(se >= prev);
    prev = se;
  }
}

TEST_CASE("rate report is internally consistent on random instances") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Scenario s = random_scenario(2 + seed % 3, 1 + seed % 4, 300 + seed);
    const PrecoderSet F = random_precoders(s, 400 + seed);
    const RateReport rep = evaluate(F, s);

    CHECK(rep.common_nats == doctest::Approx(rep.common_per_user_nats.minCoeff()).epsilon(1e-15));
    CHECK(rep.sum_se_bits ==
          doctest::Approx((rep.common_nats + rep.private_nats.sum()) / std::numbers::ln2)
              .epsilon(1e-12));
    CHECK((rep.private_nats.array() >= 0.0).all());
    CHECK(rep.common_nats >= 0.0);
    CHECK(rep.total_power_w == doctest::Approx(total_power(F, s, rep.sum_se_bits)).epsilon(1e-12));
    CHECK(rep.ee == doctest::Approx(energy_efficiency(F, s)).epsilon(1e-12));
  }
}
