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

#include "rsopt/conic.hpp"
#include "rsopt/model.hpp"
#include "rsopt/surrogate.hpp"

namespace rsopt {

enum class Bound { kLb1, kLb2 };        ///< LB1 -> SOCP, LB2 -> exp-cone GCP
enum class Strategy { kRs, kNoRs };     ///< NoRS pins the common stream to zero

/// Identifies one convex subproblem family of the SCA loop.
struct SubproblemSpec {
  Approach approach = Approach::kWeightedSum;
  Bound bound = Bound::kLb1;
  Strategy strategy = Strategy::kRs;
  double w = 0.5;  ///< tradeoff weight in [0, 1]

  void validate() const;  // throws std::invalid_argument
};

/// Expansion point of one SCA iteration. `r_n` covers the active rate
/// variables: [r_c, r_1..r_K] under RS, [r_1..r_K] under NoRS (nats).
struct SCAState {
  PrecoderSet F_n;
  double x_n = 0.0;       ///< sqrt of the summed rate variables
  double y_n = 0.0;       ///< power-accounting variable, >= P_c
  Eigen::VectorXd r_n;
  double objective_n = 0.0;       ///< subproblem objective, bit-scaled
  double true_objective_n = 0.0;  ///< scalarized objective from the exact model
};

/// Variable indexing of a built subproblem: embedded F first, then eta,
/// the rate variables, x, y, and (LB2 only) the SINR variables.
struct VarLayout {
  int nt = 0;
  int users = 0;
  bool rs = true;
  bool lb2 = false;
  int f_base = 0;
  int n_f = 0;
  int eta = -1;
  int r_base = 0;
  int n_r = 0;
  int x = -1;
  int y = -1;
  int gamma_base = -1;
  int n_gamma = 0;
  int t_pow = -1;  ///< transmit-power epigraph, Dinkelbach inner program only
  int total = 0;

  /// Embedding base of precoder column `col` (0 = common). Common is only
  /// present under RS.
  int f_col(int col) const { return f_base + 2 * nt * (rs ? col : col - 1); }
  int r_common() const { return r_base; }
  int r_private(int k) const { return r_base + (rs ? 1 : 0) + k; }
  int gamma_private(int k) const { return gamma_base + k; }
  int gamma_common(int k) const { return gamma_base + users + k; }
};

struct BuiltProgram {
  conic::ConicProgram program;
  VarLayout layout;
};

/// Matched-filter start at full budget with an equal power split over the
/// active streams; x/y are set to make the sum-rate and power-accounting
/// constraints hold with equality.
SCAState initialize(const SubproblemSpec& spec, const Scenario& s);

/// Assembles the convex subproblem at the current expansion point.
BuiltProgram build(const SubproblemSpec& spec, const SCAState& state, const Scenario& s);

/// Full variable assignment of the expansion point itself; it satisfies
/// every row of build()'s program (tangency of the surrogates).
Eigen::VectorXd expansion_point(const SubproblemSpec& spec, const SCAState& state,
                                const Scenario& s, const VarLayout& layout);

/// A strictly interior assignment near the expansion point, or an empty
/// vector when the margins cannot be established (the solver then runs its
/// own feasibility phase).
Eigen::VectorXd interior_hint(const SubproblemSpec& spec, const SCAState& state,
                              const Scenario& s, const VarLayout& layout);

/// Next SCA state from a solved subproblem. The reported true objective is
/// recomputed from the exact model; the convergence objective is the
/// subproblem optimum (bit-scaled).
SCAState extract(const conic::ConicSolution& sol, const SubproblemSpec& spec,
                 const Scenario& s, const VarLayout& layout);

/// Rate-only SE maximization program (no tradeoff machinery): objective
/// sum r_i under the budget and the bound's rate constraints. Used as the
/// dedicated SE-max path.
BuiltProgram build_se_max(Bound bound, Strategy strategy, const SCAState& state,
                          const Scenario& s);

/// Parametric Dinkelbach inner program: maximize
///   w * (f - lambda * g) + (1 - w) * f / P_c
/// under LB1 rate surrogates, with f = sum r / ln2 and
/// g = t_pow + P_c + chi * f. The transmit-power epigraph t_pow is the last
/// variable of the returned layout-compatible program.
BuiltProgram build_dinkelbach_inner(Strategy strategy, double w, double lambda,
                                    const SCAState& state, const Scenario& s);

}  // namespace rsopt
