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
#include <complex>
#include <numbers>

#include "rsopt/channel.hpp"

using namespace rsopt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("geometric channel: broadside angle theta = 0 gives alternating signs") {
  GeometricChannelConfig cfg;
  cfg.nt = 4;
  cfg.angles = {0.0};
  cfg.gains = {1.0};
  cfg.spacing_over_wavelength = 0.5;

  const Eigen::MatrixXcd h = geometric_channels(cfg);
  REQUIRE(h.rows() == 4);
  REQUIRE(h.cols() == 1);
  // cos 0 = 1, so the phase ramp is pi per element: [1, -1, 1, -1].
  const double expected[] = {1.0, -1.0, 1.0, -1.0};
  for (int n = 0; n < 4; ++n) {
    CHECK(h(n, 0).real() == doctest::Approx(expected[n]).epsilon(1e-12));
    CHECK(std::abs(h(n, 0).imag()) < 1e-12);
  }
}

TEST_CASE("geometric channel: theta = pi/2 kills the phase ramp") {
  GeometricChannelConfig cfg;
  cfg.nt = 6;
  cfg.angles = {kPi / 2.0};
  cfg.gains = {1.0};

  const Eigen::MatrixXcd h = geometric_channels(cfg);
  for (int n = 0; n < cfg.nt; ++n) {
    CHECK(std::abs(h(n, 0) - std::complex<double>(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("geometric channel: cross-correlation matches a direct summation oracle") {
  GeometricChannelConfig cfg;
  cfg.nt = 4;
  cfg.angles = {0.0, kPi / 9.0};
  cfg.gains = {1.0, 1.0};
  cfg.spacing_over_wavelength = 0.5;

  const Eigen::MatrixXcd h = geometric_channels(cfg);

  // Independent 4-term complex sum: h_1^H h_2 = sum_n e^{-j pi n cos t1} e^{j pi n cos t2}.
  std::complex<double> acc(0.0, 0.0);
  for (int n = 0; n < 4; ++n) {
    const double phase = kPi * n * (std::cos(kPi / 9.0) - std::cos(0.0));
    acc += std::polar(1.0, phase);
  }
  const double oracle = std::abs(acc);
  const double got = std::abs(h.col(0).dot(h.col(1)));
  CHECK(got == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("geometric channel: per-entry modulus equals the channel gain") {
  GeometricChannelConfig cfg;
  cfg.nt = 5;
  cfg.angles = {0.3, 1.1, 2.4};
  cfg.gains = {0.5, 1.0, 2.25};

  const Eigen::MatrixXcd h = geometric_channels(cfg);
  for (int k = 0; k < 3; ++k) {
    for (int n = 0; n < cfg.nt; ++n) {
      CHECK(std::abs(h(n, k)) == doctest::Approx(cfg.gains[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("geometric channel: theta and -theta produce identical columns") {
  GeometricChannelConfig plus, minus;
  plus.nt = minus.nt = 4;
  plus.angles = {0.7};
  minus.angles = {-0.7};
  plus.gains = minus.gains = {1.3};

  const Eigen::MatrixXcd hp = geometric_channels(plus);
  const Eigen::MatrixXcd hm = geometric_channels(minus);
  CHECK((hp - hm).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("geometric channel: invalid configs are rejected") {
  GeometricChannelConfig cfg;
  cfg.nt = 0;
  cfg.angles = {0.0};
  cfg.gains = {1.0};
  CHECK_THROWS_AS(geometric_channels(cfg), std::invalid_argument);

  cfg.nt = 4;
  cfg.angles = {};
  cfg.gains = {};
  CHECK_THROWS_AS(geometric_channels(cfg), std::invalid_argument);

  cfg.angles = {0.0};
  cfg.gains = {1.0, 2.0};
  CHECK_THROWS_AS(geometric_channels(cfg), std::invalid_argument);
}

TEST_CASE("cscg channel: deterministic for a fixed seed") {
  const Eigen::MatrixXcd a = random_cscg_channels(4, 3, 0xdeadbeef);
  const Eigen::MatrixXcd b = random_cscg_channels(4, 3, 0xdeadbeef);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXcd c = random_cscg_channels(4, 3, 0xdeadbef0);
  CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("cscg channel: unit second moment (Monte Carlo oracle)") {
  const Eigen::MatrixXcd h = random_cscg_channels(100, 1000, 42);  // 1e5 entries
  const double mean_mag2 = h.cwiseAbs2().mean();
  CHECK(mean_mag2 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("cscg channel: distinct entries are uncorrelated (Monte Carlo oracle)") {
  const Eigen::MatrixXcd h = random_cscg_channels(2, 100000, 7);
  std::complex<double> acc(0.0, 0.0);
  for (int j = 0; j < h.cols(); ++j) {
    acc += h(0, j) * std::conj(h(1, j));
  }
  CHECK(std::abs(acc) / static_cast<double>(h.cols()) < 0.02);
}

TEST_CASE("snr conversions") {
  // -20 dBm noise (0.01 W in this convention) and 20 dB SNR is exactly 1 W.
  CHECK(db_to_linear(-20.0) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(snr_db_to_pmax(20.0, db_to_linear(-20.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(snr_db_to_pmax(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(snr_db_to_pmax(25.0, 0.01) == doctest::Approx(3.1623).epsilon(1e-4));
  CHECK(db_to_linear(5.0) == doctest::Approx(3.16228).epsilon(1e-5));

  for (double snr : {-3.0, 0.0, 12.5, 40.0}) {
    CHECK(pmax_to_snr_db(snr_db_to_pmax(snr, 0.01), 0.01) == doctest::Approx(snr).epsilon(1e-12));
  }
  CHECK_THROWS_AS(snr_db_to_pmax(10.0, 0.0), std::invalid_argument);
}

TEST_CASE("scenario invariants are validated") {
  GeometricChannelConfig cfg;
  cfg.nt = 2;
  cfg.angles = {0.0, 1.0};
  cfg.gains = {1.0, 1.0};
  const Eigen::MatrixXcd h = geometric_channels(cfg);

  CHECK_NOTHROW(make_scenario(h, 0.01, 1.0, 3.16, 0.1));
  CHECK_THROWS_AS(make_scenario(h, -0.01, 1.0, 3.16, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_scenario(h, 0.01, 0.0, 3.16, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_scenario(h, 0.01, 1.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_scenario(h, 0.01, 1.0, 3.16, -0.2), std::invalid_argument);
}
