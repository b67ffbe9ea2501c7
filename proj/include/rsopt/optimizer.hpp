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

#include <string>
#include <vector>

#include "rsopt/subproblems.hpp"

namespace rsopt {

struct RunOptions {
  double tol = 1e-6;        ///< relative objective delta between iterations
  int max_iters = 200;
  bool record_trace = true;
  bool timer = true;        ///< wall-clock capture; disable for byte-stable output
  double solver_tol = 1e-8; ///< inner conic tolerance, kept below `tol`

  void validate() const;  // throws std::invalid_argument
};

enum class RunStatus { kConverged, kMaxIterations, kSolverFailure };

const char* to_string(RunStatus s);

struct IterRecord {
  double surrogate_obj = 0.0;  ///< subproblem optimum, bit-scaled
  double true_obj = 0.0;       ///< scalarized objective of the exact model
  double se_bits = 0.0;
  double ee = 0.0;
  double tx_power_w = 0.0;
  double wall_ms = 0.0;
};

struct RunTrace {
  std::string method;
  std::vector<IterRecord> iters;   ///< empty unless record_trace
  PrecoderSet final_precoders;
  int iterations = 0;
  RunStatus status = RunStatus::kMaxIterations;
  double final_surrogate_obj = 0.0;
  double final_true_obj = 0.0;
  double final_se_bits = 0.0;
  double final_ee = 0.0;
  double final_tx_power_w = 0.0;
  double total_wall_ms = 0.0;
};

/// One-layer SCA: build the convex subproblem at the current expansion
/// point, solve it, move there, stop once the subproblem optima stall.
/// The surrogate objective sequence is non-decreasing up to solver noise.
/// A solver failure truncates the trace and returns the best iterate.
RunTrace sca_solve(const SubproblemSpec& spec, const Scenario& s,
                   const RunOptions& opts = {});

/// Two-layer Dinkelbach baseline: the outer loop updates the EE parameter
/// lambda = f/g, the inner loop ascends the parametric objective
/// w (f - lambda g) + (1 - w) f / P_c through MMSE-form rate surrogates.
RunTrace dinkelbach_wmmse(Strategy strategy, double w, const Scenario& s,
                          const RunOptions& opts = {});

/// Dedicated SE maximization without the tradeoff machinery; the reference
/// run for the w = 0 special case.
RunTrace se_max_solve(Bound bound, Strategy strategy, const Scenario& s,
                      const RunOptions& opts = {});

/// Table-style method tag of an SCA run, e.g. "RS-SOCP" or "NoRS-GCP".
std::string method_name(const SubproblemSpec& spec);

}  // namespace rsopt
