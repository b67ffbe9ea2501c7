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

#include "rsopt/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsopt {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from, bool enabled) {
  if (!enabled) return 0.0;
  return std::chrono::duration<double, std::milli>(Clock::now() - from).count();
}

// Solutions within two decades of the requested gap are still useful SCA
// steps; anything worse truncates the run.
bool solution_usable(const conic::ConicSolution& sol, double solver_tol) {
  return sol.usable(100.0 * solver_tol);
}

void record_iter(RunTrace& trace, const RunOptions& opts, const SCAState& state,
                 const Scenario& s, double wall_ms) {
  const RateReport rep = evaluate(state.F_n, s);
  if (opts.record_trace) {
    IterRecord rec;
    rec.surrogate_obj = state.objective_n;
    rec.true_obj = state.true_objective_n;
    rec.se_bits = rep.sum_se_bits;
    rec.ee = rep.ee;
    rec.tx_power_w = state.F_n.frobenius_sq();
    rec.wall_ms = wall_ms;
    trace.iters.push_back(rec);
  }
  trace.final_surrogate_obj = state.objective_n;
  trace.final_true_obj = state.true_objective_n;
  trace.final_se_bits = rep.sum_se_bits;
  trace.final_ee = rep.ee;
  trace.final_tx_power_w = state.F_n.frobenius_sq();
}

}  // namespace

void RunOptions::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("RunOptions: tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("RunOptions: max_iters must be >= 1");
  if (!(solver_tol > 0.0)) throw std::invalid_argument("RunOptions: solver_tol must be > 0");
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxIterations: return "max_iterations";
    case RunStatus::kSolverFailure: return "solver_failure";
  }
  return "unknown";
}

std::string method_name(const SubproblemSpec& spec) {
  std::string name = spec.strategy == Strategy::kRs ? "RS-" : "NoRS-";
  name += spec.bound == Bound::kLb1 ? "SOCP" : "GCP";
  return name;
}

RunTrace sca_solve(const SubproblemSpec& spec, const Scenario& s, const RunOptions& opts) {
  spec.validate();
  s.validate();
  opts.validate();

  RunTrace trace;
  trace.method = method_name(spec);
  const auto t0 = Clock::now();

  SCAState state = initialize(spec, s);
  double prev_obj = state.objective_n;
  trace.status = RunStatus::kMaxIterations;

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    BuiltProgram bp = build(spec, state, s);
    const Eigen::VectorXd hint = interior_hint(spec, state, s, bp.layout);
    conic::SolveOptions so;
    so.tol = opts.solver_tol;
    const conic::ConicSolution sol = conic::solve(bp.program, so, hint);
    if (!solution_usable(sol, opts.solver_tol)) {
      trace.status = RunStatus::kSolverFailure;
      break;
    }

    state = extract(sol, spec, s, bp.layout);
    trace.iterations = iter;
    record_iter(trace, opts, state, s, elapsed_ms(t0, opts.timer));

    if (std::abs(state.objective_n - prev_obj) <= opts.tol * (1.0 + std::abs(state.objective_n))) {
      trace.status = RunStatus::kConverged;
      break;
    }
    prev_obj = state.objective_n;
  }

  trace.final_precoders = state.F_n;
  trace.total_wall_ms = elapsed_ms(t0, opts.timer);
  return trace;
}

RunTrace se_max_solve(Bound bound, Strategy strategy, const Scenario& s,
                      const RunOptions& opts) {
  s.validate();
  opts.validate();

  SubproblemSpec spec;  // carries bound/strategy for init + extraction
  spec.approach = Approach::kWeightedSum;
  spec.bound = bound;
  spec.strategy = strategy;
  spec.w = 0.0;

  RunTrace trace;
  trace.method = method_name(spec) + "-SEonly";
  const auto t0 = Clock::now();

  SCAState state = initialize(spec, s);
  double prev_obj = state.r_n.sum() / std::numbers::ln2;
  trace.status = RunStatus::kMaxIterations;

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    BuiltProgram bp = build_se_max(bound, strategy, state, s);
    const Eigen::VectorXd hint = interior_hint(spec, state, s, bp.layout);
    conic::SolveOptions so;
    so.tol = opts.solver_tol;
    const conic::ConicSolution sol = conic::solve(bp.program, so, hint);
    if (!solution_usable(sol, opts.solver_tol)) {
      trace.status = RunStatus::kSolverFailure;
      break;
    }

    state = extract(sol, spec, s, bp.layout);
    trace.iterations = iter;
    record_iter(trace, opts, state, s, elapsed_ms(t0, opts.timer));

    if (std::abs(state.objective_n - prev_obj) <= opts.tol * (1.0 + std::abs(state.objective_n))) {
      trace.status = RunStatus::kConverged;
      break;
    }
    prev_obj = state.objective_n;
  }

  trace.final_precoders = state.F_n;
  trace.total_wall_ms = elapsed_ms(t0, opts.timer);
  return trace;
}

RunTrace dinkelbach_wmmse(Strategy strategy, double w, const Scenario& s,
                          const RunOptions& opts) {
  if (w < 0.0 || w > 1.0) {
    throw std::invalid_argument("dinkelbach_wmmse: w must lie in [0, 1]");
  }
  s.validate();
  opts.validate();

  SubproblemSpec spec;
  spec.approach = Approach::kWeightedSum;
  spec.bound = Bound::kLb1;
  spec.strategy = strategy;
  spec.w = w;

  RunTrace trace;
  trace.method = (strategy == Strategy::kRs ? "RS-D-MMSE" : "NoRS-D-MMSE");
  const auto t0 = Clock::now();

  SCAState state = initialize(spec, s);
  double lambda = 0.0;  // first parametric problem is the SE-type problem
  trace.status = RunStatus::kMaxIterations;
  const int outer_max = 50;
  const int inner_max = 100;
  const double inner_tol = 1e-5;  // one decade looser than the outer stop

  int total_inner = 0;
  bool failed = false;
  for (int outer = 0; outer < outer_max && !failed; ++outer) {
    double prev_inner = -std::numeric_limits<double>::infinity();
    for (int inner = 0; inner < inner_max; ++inner) {
      BuiltProgram bp = build_dinkelbach_inner(strategy, w, lambda, state, s);
      const Eigen::VectorXd hint = interior_hint(spec, state, s, bp.layout);
      conic::SolveOptions so;
      so.tol = opts.solver_tol;
      const conic::ConicSolution sol = conic::solve(bp.program, so, hint);
      if (!solution_usable(sol, opts.solver_tol)) {
        trace.status = RunStatus::kSolverFailure;
        failed = true;
        break;
      }
      state = extract(sol, spec, s, bp.layout);
      ++total_inner;
      trace.iterations = total_inner;

      // Parametric objective value including its constant part.
      const double inner_obj = sol.objective - w * lambda * s.p_circuit;
      state.objective_n = inner_obj;
      record_iter(trace, opts, state, s, elapsed_ms(t0, opts.timer));
      if (std::abs(inner_obj - prev_inner) <= inner_tol * (1.0 + std::abs(inner_obj))) break;
      prev_inner = inner_obj;
    }
    if (failed) break;

    const double f = sum_se(state.F_n, s);
    const double g = total_power(state.F_n, s, f);
    if (f - lambda * g < opts.tol * g) {
      trace.status = RunStatus::kConverged;
      break;
    }
    lambda = f / g;
  }

  trace.final_precoders = state.F_n;
  trace.total_wall_ms = elapsed_ms(t0, opts.timer);
  return trace;
}

}  // namespace rsopt
