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

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rsopt/harness.hpp"

using namespace rsopt;

namespace {

const double kPi = std::numbers::pi;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig small_config(const std::string& out_dir) {
  ExperimentConfig cfg;
  cfg.channel_kind = "geometric";
  cfg.nt = 4;
  cfg.angles = {0.0, kPi / 9.0};
  cfg.methods = {"RS-GCP"};
  cfg.w_grid = {0.0, 1.0};
  cfg.snr_grid = {20.0};
  cfg.trials = 1;
  cfg.master_seed = 7;
  cfg.out_dir = out_dir;
  cfg.run.timer = false;  // byte-stable output
  return cfg;
}

}  // namespace

TEST_CASE("angle parsing: radians and pi fractions") {
  CHECK(parse_angle("0") == 0.0);
  CHECK(parse_angle("0.35") == doctest::Approx(0.35));
  CHECK(parse_angle("pi") == doctest::Approx(kPi));
  CHECK(parse_angle("pi/9") == doctest::Approx(kPi / 9.0));
  CHECK(parse_angle("2pi/9") == doctest::Approx(2.0 * kPi / 9.0));
  CHECK(parse_angle("-pi/6") == doctest::Approx(-kPi / 6.0));
  CHECK(parse_angle("0.5pi") == doctest::Approx(kPi / 2.0));
  CHECK(parse_angle(" 3 * pi / 9 ") == doctest::Approx(kPi / 3.0));
  CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
}

TEST_CASE("config: JSON round trip with angle strings and unknown-key rejection") {
  const std::string text = R"({
    "scenario": {
      "channel": "geometric",
      "nt": 4,
      "angles": ["0", "pi/9"],
      "sigma2_dbm": -20.0,
      "pc_dbw": 5.0,
      "chi": 0.1
    },
    "sweep": {
      "methods": ["RS-GCP", "NoRS-GCP"],
      "w": [0.0, 0.5, 1.0],
      "snr_db": [15.0, 25.0],
      "trials": 2,
      "seed": 99
    }
  })";
  const ExperimentConfig cfg = ExperimentConfig::from_json_text(text);
  CHECK(cfg.nt == 4);
  CHECK(cfg.angles.size() == 2);
  CHECK(cfg.angles[1] == doctest::Approx(kPi / 9.0));
  CHECK(cfg.methods.size() == 2);
  CHECK(cfg.trials == 2);
  CHECK(cfg.master_seed == 99);

  // Canonical echo parses back to the same grids.
  const ExperimentConfig echo = ExperimentConfig::from_json_text(cfg.to_json_text());
  CHECK(echo.w_grid == cfg.w_grid);
  CHECK(echo.snr_grid == cfg.snr_grid);

  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"scenario": {"nt_antennas": 4}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"sweep": {"w": []}})"),
                  std::invalid_argument);
}

TEST_CASE("csv escaping follows RFC 4180") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("sweep records re-derive from their final precoders") {
  ExperimentConfig cfg = small_config("/tmp/rsopt_test_rederive");
  const auto results = execute_sweep(cfg);
  REQUIRE(results.size() == 2);
  for (const auto& r : results) {
    REQUIRE(r.record.status == "converged");
    const Scenario s = scenario_for(cfg, r.record.snr_db, r.record.chi, r.record.seed);
    const RateReport rep = evaluate(r.final_precoders, s);
    CHECK(std::abs(rep.sum_se_bits - r.record.se_bits) < 1e-9);
    CHECK(std::abs(rep.ee - r.record.ee) < 1e-9);
  }
}

TEST_CASE("same master seed reproduces every artifact byte for byte") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg_a = small_config("/tmp/rsopt_test_det_a");
  ExperimentConfig cfg_b = small_config("/tmp/rsopt_test_det_b");
  cfg_a.channel_kind = cfg_b.channel_kind = "cscg";
  cfg_a.users = cfg_b.users = 2;
  cfg_a.trials = cfg_b.trials = 2;

  const auto out_a = run_experiment(cfg_a);
  const auto out_b = run_experiment(cfg_b);
  CHECK(!out_a.any_failure);
  CHECK(read_file("/tmp/rsopt_test_det_a/sweep.csv") ==
        read_file("/tmp/rsopt_test_det_b/sweep.csv"));
  CHECK(read_file("/tmp/rsopt_test_det_a/manifest.json") ==
        read_file("/tmp/rsopt_test_det_b/manifest.json"));
  fs::remove_all("/tmp/rsopt_test_det_a");
  fs::remove_all("/tmp/rsopt_test_det_b");
}

TEST_CASE("unwritable output directory fails before any solve") {
  ExperimentConfig cfg = small_config("/proc/rsopt_cannot_write_here");
  CHECK_THROWS(run_experiment(cfg));
}

TEST_CASE("pareto frontier emits paired approaches and a manifest") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = small_config("/tmp/rsopt_test_pareto");
  cfg.w_grid = {0.0, 0.5, 1.0};
  cfg.snr_grid = {25.0};
  const auto out = pareto_frontier(cfg);
  CHECK(!out.any_failure);

  const std::string csv = read_file("/tmp/rsopt_test_pareto/pareto.csv");
  CHECK(csv.find("rsopt.pareto.v1") != std::string::npos);
  CHECK(csv.find("weighted_sum") != std::string::npos);
  CHECK(csv.find("weighted_power") != std::string::npos);
  CHECK(read_file("/tmp/rsopt_test_pareto/manifest.json").find("rsopt.manifest.v1") !=
        std::string::npos);
  fs::remove_all("/tmp/rsopt_test_pareto");
}

TEST_CASE("tradeoff shape: EE non-increasing along the SE-sorted w sweep at 25 dB") {
  ExperimentConfig cfg = small_config("/tmp/rsopt_test_shape");
  cfg.w_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  cfg.snr_grid = {25.0};
  const auto results = execute_sweep(cfg);
  REQUIRE(results.size() == 5);

  // Sort by SE and require the frontier shape (EE falls as SE climbs).
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : results) pts.emplace_back(r.record.se_bits, r.record.ee);
  std::sort(pts.begin(), pts.end());
  for (size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].second <= pts[i - 1].second + 1e-9);
  }
  // And the tradeoff is real at 25 dB: the SE-max end beats the EE-max end
  // in SE, and vice versa in EE.
  CHECK(pts.back().first > pts.front().first);
  CHECK(pts.front().second > pts.back().second);
}

TEST_CASE("no tradeoff at 15 dB: spread below 1e-2 relative over the w grid") {
  ExperimentConfig cfg = small_config("/tmp/rsopt_test_lowsnr");
  cfg.w_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  cfg.snr_grid = {15.0};
  const auto results = execute_sweep(cfg);
  double se_min = 1e300, se_max = 0.0, ee_min = 1e300, ee_max = 0.0;
  for (const auto& r : results) {
    se_min = std::min(se_min, r.record.se_bits);
    se_max = std::max(se_max, r.record.se_bits);
    ee_min = std::min(ee_min, r.record.ee);
    ee_max = std::max(ee_max, r.record.ee);
  }
  CHECK((se_max - se_min) / se_max < 1e-2);
  CHECK((ee_max - ee_min) / ee_max < 1e-2);
}

TEST_CASE("convergence report: monotone traces and summary rows per method") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = small_config("/tmp/rsopt_test_conv");
  cfg.methods = {"RS-GCP", "NoRS-GCP"};
  const auto report = convergence_traces(cfg);
  REQUIRE(report.summary.size() == 2);
  for (const auto& rec : report.summary) {
    CHECK(rec.status == "converged");
  }
  // SCA traces are monotone in the surrogate objective.
  double prev = -1e300;
  std::string prev_method;
  for (const auto& row : report.rows) {
    if (row.method != prev_method) {
      prev = -1e300;
      prev_method = row.method;
    }
    CHECK(row.surrogate_obj >= prev - 1e-7);
    prev = row.surrogate_obj;
  }

  const auto out = convergence_report(cfg);
  CHECK(out.files.size() == 3);
  fs::remove_all("/tmp/rsopt_test_conv");
}
