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

#include "rsopt/config.hpp"

namespace rsopt {

/// One CSV row of an experiment sweep. SE/EE are recomputed from the final
/// precoders through the model layer, never copied from solver internals.
struct SweepRecord {
  std::string method;
  std::string approach;
  double w = 0.0;
  double snr_db = 0.0;
  double chi = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double se_bits = 0.0;
  double ee = 0.0;
  double tx_power_w = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  std::string status;
};

struct SweepResult {
  SweepRecord record;
  PrecoderSet final_precoders;
  double final_true_obj = 0.0;
};

/// Runs the full (method x approach x snr x w x chi x trial) grid on a
/// worker pool. Rows come back in deterministic grid order regardless of
/// scheduling; per-task seeds are hash(master seed, grid indices).
std::vector<SweepResult> execute_sweep(const ExperimentConfig& cfg);

/// Per-iteration convergence traces on the fixed 3-user reference scenario
/// (theta = [0, pi/9, 2pi/9], SNR 20 dB, w = 0.5).
struct ConvergenceRow {
  std::string method;
  int iteration = 0;
  double surrogate_obj = 0.0;
  double true_obj = 0.0;
  double wall_ms = 0.0;
};
struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::vector<SweepRecord> summary;  ///< one row per method
};
ConvergenceReport convergence_traces(const ExperimentConfig& cfg);

struct ExperimentOutput {
  std::vector<std::string> files;
  bool any_failure = false;
};

/// Generic sweep -> sweep.csv (+ manifest.json). Deterministic given the
/// master seed (byte-for-byte when the timer is disabled).
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

/// w-sweep under both scalarization approaches -> pareto.csv with paired
/// (SE, EE) frontiers per method.
ExperimentOutput pareto_frontier(ExperimentConfig cfg);

/// Iteration-count and wall-time report -> convergence_trace.csv +
/// convergence_summary.csv.
ExperimentOutput convergence_report(ExperimentConfig cfg);

// RFC-4180 CSV helpers.
std::string csv_escape(const std::string& field);
std::string format_double(double v);

}  // namespace rsopt
