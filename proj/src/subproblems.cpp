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

#include "rsopt/subproblems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rsopt {

using conic::ConeKind;
using conic::ConicProgram;
using conic::LinExpr;
using conic::Relation;

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Rate variables are nats; chi multiplies bit-valued SE, so nat-rate sums
// enter power rows with the slope chi / ln2.
double chi_nat(const Scenario& s) { return s.chi / kLn2; }

bool is_rs(Strategy st) { return st == Strategy::kRs; }

// Active rate vector (nats) of the exact model at F: [r_c, r_1..r_K] under
// RS, [r_1..r_K] under NoRS.
Eigen::VectorXd active_rates(const PrecoderSet& F, const Scenario& s, Strategy strategy) {
  const int users = s.users();
  const bool rs = is_rs(strategy);
  Eigen::VectorXd r(users + (rs ? 1 : 0));
  if (rs) r[0] = common_rate(F, s);
  for (int k = 0; k < users; ++k) {
    r[(rs ? 1 : 0) + k] = private_rate(F, s, k);
  }
  return r;
}

VarLayout make_layout(const Scenario& s, Strategy strategy, Bound bound, bool tradeoff_vars) {
  VarLayout lay;
  lay.nt = s.nt();
  lay.users = s.users();
  lay.rs = is_rs(strategy);
  lay.lb2 = bound == Bound::kLb2;
  const int cols = lay.users + (lay.rs ? 1 : 0);
  lay.f_base = 0;
  lay.n_f = 2 * lay.nt * cols;
  int next = lay.n_f;
  if (tradeoff_vars) lay.eta = next++;
  lay.r_base = next;
  lay.n_r = cols;
  next += lay.n_r;
  if (tradeoff_vars) {
    lay.x = next++;
    lay.y = next++;
  }
  if (lay.lb2) {
    lay.gamma_base = next;
    lay.n_gamma = lay.users * (lay.rs ? 2 : 1);
    next += lay.n_gamma;
  }
  lay.total = next;
  return lay;
}

void add_layout_variables(ConicProgram& p, const VarLayout& lay, bool tradeoff_vars) {
  const int cols = lay.users + (lay.rs ? 1 : 0);
  for (int c = 0; c < cols; ++c) {
    const std::string tag = lay.rs ? (c == 0 ? std::string("c") : std::to_string(c))
                                   : std::to_string(c + 1);
    for (int n = 0; n < lay.nt; ++n) {
      p.add_variable("Re(f_" + tag + "[" + std::to_string(n) + "])");
      p.add_variable("Im(f_" + tag + "[" + std::to_string(n) + "])");
    }
  }
  if (tradeoff_vars) p.add_variable("eta");
  if (lay.rs) p.add_variable("r_c");
  for (int k = 0; k < lay.users; ++k) p.add_variable("r_" + std::to_string(k + 1));
  if (tradeoff_vars) {
    p.add_variable("x");
    p.add_variable("y");
  }
  if (lay.lb2) {
    for (int k = 0; k < lay.users; ++k) p.add_variable("gamma_" + std::to_string(k + 1));
    if (lay.rs) {
      for (int k = 0; k < lay.users; ++k) p.add_variable("gamma_c_" + std::to_string(k + 1));
    }
  }
}

// Sum of the active rate variables.
LinExpr rate_sum_expr(const VarLayout& lay) {
  LinExpr e;
  if (lay.rs) e.add(lay.r_common(), 1.0);
  for (int k = 0; k < lay.users; ++k) e.add(lay.r_private(k), 1.0);
  return e;
}

// Embedded coordinates of every active precoder column, optionally scaled.
std::vector<LinExpr> f_coordinate_rows(const VarLayout& lay, double scale) {
  std::vector<LinExpr> rows;
  rows.reserve(lay.n_f);
  for (int i = 0; i < lay.n_f; ++i) {
    rows.push_back(LinExpr::variable(lay.f_base + i, scale));
  }
  return rows;
}

// r_stream <= LB1 surrogate of the stream rate, as a rotated SOC block:
//   a * sum_i |b^H f_i|^2 <= const + 2 a Re{b^H f_stream} - r_stream.
void add_lb1_row(ConicProgram& p, const VarLayout& lay, const SCAState& state,
                 const Scenario& s, Stream stream) {
  const Lb1Coeffs c = lb1_coeffs(state.F_n, s, stream);
  const int r_idx = stream.is_common() ? lay.r_common() : lay.r_private(stream.user);
  const int col = stream.is_common() ? 0 : stream.user + 1;

  LinExpr head(0.5 * c.constant);
  head.add(r_idx, -0.5);
  const auto [re_own, im_own] = conic::inner_product_rows(c.b, lay.f_col(col));
  head.add_scaled(re_own, c.a);

  const std::string label = (stream.is_common() ? "rate_c_" : "rate_p_") +
                            std::to_string(stream.user + 1);
  if (!(c.b.cwiseAbs().maxCoeff() > 0.0)) {
    // Degenerate expansion (b = 0): the bound is linear.
    LinExpr lin = LinExpr::variable(r_idx);
    lin.add_constant(-c.constant);
    lin.add_scaled(re_own, -2.0 * c.a);
    p.add_linear(lin, Relation::kLessEqual, 0.0, label);
    return;
  }

  const double sa = std::sqrt(c.a);
  std::vector<LinExpr> rows{head, LinExpr(1.0)};
  const int i_begin = stream.is_common() ? 0 : 1;
  for (int i = i_begin; i <= lay.users; ++i) {
    const auto [re_i, im_i] = conic::inner_product_rows(c.b, lay.f_col(i));
    rows.push_back(re_i.scaled(sa));
    rows.push_back(im_i.scaled(sa));
  }
  p.add_cone(ConeKind::kRsoc, std::move(rows), label);
}

// gamma_stream <= LB2 SINR surrogate, as a rotated SOC block:
//   qw * sum_{i in interferers} |h^H f_i|^2 <= Re{lin^H f_stream} - qw sigma^2 - gamma.
void add_lb2_sinr_row(ConicProgram& p, const VarLayout& lay, const SCAState& state,
                      const Scenario& s, Stream stream) {
  const Lb2Coeffs c = lb2_coeffs(state.F_n, s, stream);
  const int k = stream.user;
  const int g_idx = stream.is_common() ? lay.gamma_common(k) : lay.gamma_private(k);
  const int col = stream.is_common() ? 0 : k + 1;

  const auto [re_own, im_own] = conic::inner_product_rows(c.lin, lay.f_col(col));

  std::vector<LinExpr> rest;
  const double sq = std::sqrt(c.quad_weight);
  if (c.quad_weight > 0.0) {
    for (int i = 0; i < lay.users; ++i) {
      if (!stream.is_common() && i == k) continue;
      const auto [re_i, im_i] = conic::inner_product_rows(s.H.col(k), lay.f_col(i + 1));
      rest.push_back(re_i.scaled(sq));
      rest.push_back(im_i.scaled(sq));
    }
  }

  const std::string label = (stream.is_common() ? "sinr_c_" : "sinr_p_") + std::to_string(k + 1);
  if (rest.empty()) {
    // No quadratic part (zero-power expansion or single-user private):
    // gamma + qw sigma^2 - Re{lin^H f} <= 0.
    LinExpr lin = LinExpr::variable(g_idx);
    lin.add_constant(c.quad_weight * s.sigma2[k]);
    lin.add_scaled(re_own, -1.0);
    p.add_linear(lin, Relation::kLessEqual, 0.0, label);
    return;
  }
  LinExpr head(-0.5 * c.quad_weight * s.sigma2[k]);
  head.add(g_idx, -0.5);
  head.add_scaled(re_own, 0.5);
  std::vector<LinExpr> rows{head, LinExpr(1.0)};
  for (auto& r : rest) rows.push_back(std::move(r));
  p.add_cone(ConeKind::kRsoc, std::move(rows), label);
}

// r <= ln(1 + gamma) as (r, 1, 1 + gamma) in K_exp.
void add_exp_rate_row(ConicProgram& p, int r_idx, int gamma_idx, const std::string& label) {
  p.add_cone(ConeKind::kExp,
             {LinExpr::variable(r_idx), LinExpr(1.0),
              LinExpr::variable(gamma_idx).add_constant(1.0)},
             label);
}

// Shared constraint body: rate bounds, nonnegativity and the power budget.
void add_rate_and_budget(ConicProgram& p, const VarLayout& lay, Bound bound,
                         const SCAState& state, const Scenario& s) {
  for (int k = 0; k < lay.users; ++k) {
    p.add_linear(LinExpr::variable(lay.r_private(k), -1.0), Relation::kLessEqual, 0.0,
                 "r_p_" + std::to_string(k + 1) + ">=0");
  }
  if (lay.rs) {
    p.add_linear(LinExpr::variable(lay.r_common(), -1.0), Relation::kLessEqual, 0.0, "r_c>=0");
  }

  if (bound == Bound::kLb1) {
    for (int k = 0; k < lay.users; ++k) {
      add_lb1_row(p, lay, state, s, Stream::priv(k));
    }
    if (lay.rs) {
      for (int k = 0; k < lay.users; ++k) {
        add_lb1_row(p, lay, state, s, Stream::common_at(k));
      }
    }
  } else {
    for (int k = 0; k < lay.users; ++k) {
      p.add_linear(LinExpr::variable(lay.gamma_private(k), -1.0), Relation::kLessEqual, 0.0,
                   "gamma_p_" + std::to_string(k + 1) + ">=0");
      add_lb2_sinr_row(p, lay, state, s, Stream::priv(k));
      add_exp_rate_row(p, lay.r_private(k), lay.gamma_private(k),
                       "exp_p_" + std::to_string(k + 1));
    }
    if (lay.rs) {
      for (int k = 0; k < lay.users; ++k) {
        p.add_linear(LinExpr::variable(lay.gamma_common(k), -1.0), Relation::kLessEqual, 0.0,
                     "gamma_c_" + std::to_string(k + 1) + ">=0");
        add_lb2_sinr_row(p, lay, state, s, Stream::common_at(k));
        add_exp_rate_row(p, lay.r_common(), lay.gamma_common(k),
                         "exp_c_" + std::to_string(k + 1));
      }
    }
  }

  // Power budget F in S as a plain SOC.
  std::vector<LinExpr> budget{LinExpr(std::sqrt(s.p_max))};
  for (auto& row : f_coordinate_rows(lay, 1.0)) budget.push_back(std::move(row));
  p.add_cone(ConeKind::kSoc, std::move(budget), "budget");
}

}  // namespace

void SubproblemSpec::validate() const {
  if (w < 0.0 || w > 1.0) {
    throw std::invalid_argument("SubproblemSpec: w must lie in [0, 1]");
  }
}

SCAState initialize(const SubproblemSpec& spec, const Scenario& s) {
  spec.validate();
  s.validate();
  const int nt = s.nt();
  const int users = s.users();
  const bool rs = is_rs(spec.strategy);
  const int streams = users + (rs ? 1 : 0);
  const double per_stream = s.p_max / streams;

  PrecoderSet F = PrecoderSet::zeros(nt, users);
  auto direction = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    const double norm = v.norm();
    if (norm < 1e-300) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(nt);
      e[0] = 1.0;
      return e;
    }
    return v / norm;
  };
  for (int k = 0; k < users; ++k) {
    F.F.col(k + 1) = std::sqrt(per_stream) * direction(s.H.col(k));
  }
  if (rs) {
    Eigen::VectorXcd mix = Eigen::VectorXcd::Zero(nt);
    for (int k = 0; k < users; ++k) mix += direction(s.H.col(k));
    F.F.col(0) = std::sqrt(per_stream) * direction(mix);
  }

  SCAState state;
  state.F_n = F;
  state.r_n = active_rates(F, s, spec.strategy);
  state.x_n = std::sqrt(state.r_n.sum());
  const double ptx = F.frobenius_sq();
  const double se_bits = state.r_n.sum() / kLn2;
  state.y_n = (spec.approach == Approach::kWeightedSum)
                  ? ptx + s.p_circuit + s.chi * se_bits
                  : spec.w * (ptx + s.chi * se_bits) + s.p_circuit;
  state.true_objective_n = scalarized_objective(spec.approach, spec.w, F, s);
  state.objective_n = state.true_objective_n;
  return state;
}

BuiltProgram build(const SubproblemSpec& spec, const SCAState& state, const Scenario& s) {
  spec.validate();
  if (!state.F_n.F.allFinite() || !(state.y_n > 0.0) || !(state.x_n >= 0.0) ||
      state.r_n.size() != s.users() + (is_rs(spec.strategy) ? 1 : 0)) {
    throw std::invalid_argument("build: malformed SCA state");
  }

  BuiltProgram bp;
  bp.layout = make_layout(s, spec.strategy, spec.bound, /*tradeoff_vars=*/true);
  const VarLayout& lay = bp.layout;
  ConicProgram& p = bp.program;
  add_layout_variables(p, lay, /*tradeoff_vars=*/true);

  // Objective.
  if (spec.approach == Approach::kWeightedSum) {
    p.set_objective(lay.eta, spec.w);
    const double se_coef = (1.0 - spec.w) / s.p_circuit;
    if (se_coef > 0.0) {
      if (lay.rs) p.set_objective(lay.r_common(), se_coef);
      for (int k = 0; k < lay.users; ++k) p.set_objective(lay.r_private(k), se_coef);
    }
  } else {
    p.set_objective(lay.eta, 1.0);
  }

  // eta <= phi(x, y): the linearized quadratic-over-linear bound.
  const PhiCoeffs phi = phi_coeffs(state.x_n, state.y_n);
  LinExpr phi_row = LinExpr::variable(lay.eta);
  phi_row.add(lay.x, -phi.slope_x);
  phi_row.add(lay.y, -phi.slope_y);
  p.add_linear(phi_row, Relation::kLessEqual, 0.0, "phi");
  p.add_linear(LinExpr::variable(lay.eta, -1.0), Relation::kLessEqual, 0.0, "eta>=0");
  p.add_linear(LinExpr::variable(lay.x, -1.0), Relation::kLessEqual, 0.0, "x>=0");

  // x^2 <= sum r.
  {
    std::vector<LinExpr> rows{rate_sum_expr(lay).scaled(0.5), LinExpr(1.0),
                              LinExpr::variable(lay.x)};
    p.add_cone(ConeKind::kRsoc, std::move(rows), "rate_sum");
  }

  // Power accounting row.
  if (spec.approach == Approach::kWeightedSum) {
    // ||F||^2 + P_c + chi * SE <= y
    LinExpr head = LinExpr::variable(lay.y, 0.5);
    head.add_constant(-0.5 * s.p_circuit);
    head.add_scaled(rate_sum_expr(lay), -0.5 * chi_nat(s));
    std::vector<LinExpr> rows{head, LinExpr(1.0)};
    for (auto& row : f_coordinate_rows(lay, 1.0)) rows.push_back(std::move(row));
    p.add_cone(ConeKind::kRsoc, std::move(rows), "power");
  } else if (spec.w > 0.0) {
    // w (||F||^2 + chi * SE) + P_c <= y
    LinExpr head = LinExpr::variable(lay.y, 0.5);
    head.add_constant(-0.5 * s.p_circuit);
    head.add_scaled(rate_sum_expr(lay), -0.5 * spec.w * chi_nat(s));
    std::vector<LinExpr> rows{head, LinExpr(1.0)};
    for (auto& row : f_coordinate_rows(lay, std::sqrt(spec.w))) rows.push_back(std::move(row));
    p.add_cone(ConeKind::kRsoc, std::move(rows), "power");
  } else {
    // w = 0: the row degenerates to P_c <= y.
    p.add_linear(LinExpr::variable(lay.y, -1.0), Relation::kLessEqual, -s.p_circuit, "power");
  }

  add_rate_and_budget(p, lay, spec.bound, state, s);
  return bp;
}

BuiltProgram build_se_max(Bound bound, Strategy strategy, const SCAState& state,
                          const Scenario& s) {
  BuiltProgram bp;
  bp.layout = make_layout(s, strategy, bound, /*tradeoff_vars=*/false);
  const VarLayout& lay = bp.layout;
  ConicProgram& p = bp.program;
  add_layout_variables(p, lay, /*tradeoff_vars=*/false);

  if (lay.rs) p.set_objective(lay.r_common(), 1.0);
  for (int k = 0; k < lay.users; ++k) p.set_objective(lay.r_private(k), 1.0);

  add_rate_and_budget(p, lay, bound, state, s);
  return bp;
}

BuiltProgram build_dinkelbach_inner(Strategy strategy, double w, double lambda,
                                    const SCAState& state, const Scenario& s) {
  if (w < 0.0 || w > 1.0) {
    throw std::invalid_argument("build_dinkelbach_inner: w must lie in [0, 1]");
  }
  BuiltProgram bp;
  bp.layout = make_layout(s, strategy, Bound::kLb1, /*tradeoff_vars=*/false);
  VarLayout& lay = bp.layout;
  ConicProgram& p = bp.program;
  add_layout_variables(p, lay, /*tradeoff_vars=*/false);
  lay.t_pow = p.add_variable("t_pow");
  lay.total += 1;

  // maximize w (f - lambda g) + (1 - w) f / P_c with f = (sum r) / ln2 and
  // g = t_pow + P_c + chi f; the constant -w lambda P_c is added back by the
  // caller when reporting.
  const double rate_coef = (w * (1.0 - lambda * s.chi) + (1.0 - w) / s.p_circuit) / kLn2;
  if (lay.rs) p.set_objective(lay.r_common(), rate_coef);
  for (int k = 0; k < lay.users; ++k) p.set_objective(lay.r_private(k), rate_coef);
  p.set_objective(lay.t_pow, -w * lambda);

  // ||F||^2 <= t_pow <= p_max.
  {
    std::vector<LinExpr> rows{LinExpr::variable(lay.t_pow, 0.5), LinExpr(1.0)};
    for (auto& row : f_coordinate_rows(lay, 1.0)) rows.push_back(std::move(row));
    p.add_cone(ConeKind::kRsoc, std::move(rows), "tx_power");
  }
  p.add_linear(LinExpr::variable(lay.t_pow), Relation::kLessEqual, s.p_max, "t_pow<=p_max");

  add_rate_and_budget(p, lay, Bound::kLb1, state, s);
  return bp;
}

Eigen::VectorXd expansion_point(const SubproblemSpec& spec, const SCAState& state,
                                const Scenario& s, const VarLayout& lay) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(lay.total);
  const int cols = lay.users + (lay.rs ? 1 : 0);
  for (int c = 0; c < cols; ++c) {
    const int col = lay.rs ? c : c + 1;
    z.segment(lay.f_col(col), 2 * lay.nt) = conic::embed_complex(state.F_n.F.col(col));
  }
  if (lay.rs) z[lay.r_common()] = state.r_n[0];
  for (int k = 0; k < lay.users; ++k) {
    z[lay.r_private(k)] = state.r_n[(lay.rs ? 1 : 0) + k];
  }
  if (lay.x >= 0) z[lay.x] = state.x_n;
  if (lay.y >= 0) z[lay.y] = state.y_n;
  if (lay.eta >= 0) z[lay.eta] = state.x_n * state.x_n / state.y_n;
  if (lay.lb2) {
    for (int k = 0; k < lay.users; ++k) {
      z[lay.gamma_private(k)] = std::expm1(private_rate(state.F_n, s, k));
      if (lay.rs) z[lay.gamma_common(k)] = std::expm1(common_rate_at_user(state.F_n, s, k));
    }
  }
  if (lay.t_pow >= 0) z[lay.t_pow] = state.F_n.frobenius_sq();
  (void)spec;
  return z;
}

Eigen::VectorXd interior_hint(const SubproblemSpec& spec, const SCAState& state,
                              const Scenario& s, const VarLayout& lay) {
  const double shrink = 1e-6;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(lay.total);

  PrecoderSet F_in = state.F_n;
  F_in.F *= (1.0 - 1e-9);
  const int cols = lay.users + (lay.rs ? 1 : 0);
  for (int c = 0; c < cols; ++c) {
    const int col = lay.rs ? c : c + 1;
    z.segment(lay.f_col(col), 2 * lay.nt) = conic::embed_complex(F_in.F.col(col));
  }

  Eigen::VectorXd r_in = state.r_n * (1.0 - shrink);
  if ((r_in.array() <= 0.0).any()) return {};
  if (lay.rs) z[lay.r_common()] = r_in[0];
  for (int k = 0; k < lay.users; ++k) {
    z[lay.r_private(k)] = r_in[(lay.rs ? 1 : 0) + k];
  }

  if (lay.lb2) {
    for (int k = 0; k < lay.users; ++k) {
      const Lb2Coeffs cp = lb2_coeffs(state.F_n, s, Stream::priv(k));
      const double upper = lb2_eval(cp, F_in, s);
      const double lower = std::expm1(z[lay.r_private(k)]);
      if (!(upper > lower) || !(lower >= 0.0)) return {};
      z[lay.gamma_private(k)] = 0.5 * (lower + upper);
      if (lay.rs) {
        const Lb2Coeffs cc = lb2_coeffs(state.F_n, s, Stream::common_at(k));
        const double upper_c = lb2_eval(cc, F_in, s);
        const double lower_c = std::expm1(z[lay.r_common()]);
        if (!(upper_c > lower_c) || !(lower_c >= 0.0)) return {};
        z[lay.gamma_common(k)] = 0.5 * (lower_c + upper_c);
      }
    }
  } else {
    // LB1 rows must hold strictly at the shrunk point.
    for (int k = 0; k < lay.users; ++k) {
      if (lb1_eval(lb1_coeffs(state.F_n, s, Stream::priv(k)), F_in) <= z[lay.r_private(k)]) {
        return {};
      }
    }
    if (lay.rs) {
      for (int k = 0; k < lay.users; ++k) {
        if (lb1_eval(lb1_coeffs(state.F_n, s, Stream::common_at(k)), F_in) <= z[lay.r_common()]) {
          return {};
        }
      }
    }
  }

  const double sum_r = r_in.sum();
  const double ptx = F_in.frobenius_sq();
  if (lay.x >= 0) z[lay.x] = std::sqrt(sum_r) * (1.0 - shrink);
  if (lay.y >= 0) {
    const double y_min = (spec.approach == Approach::kWeightedSum)
                             ? ptx + s.p_circuit + chi_nat(s) * sum_r
                             : spec.w * (ptx + chi_nat(s) * sum_r) + s.p_circuit;
    z[lay.y] = y_min + std::max(shrink, shrink * std::abs(state.y_n));
  }
  if (lay.eta >= 0) {
    const PhiCoeffs phi = phi_coeffs(state.x_n, state.y_n);
    const double phi_val = phi.eval(z[lay.x], z[lay.y]);
    if (!(phi_val > 0.0)) return {};
    z[lay.eta] = phi_val * (1.0 - shrink);
  }
  if (lay.t_pow >= 0) {
    if (!(ptx < s.p_max)) return {};
    z[lay.t_pow] = 0.5 * (ptx + s.p_max);
  }
  return z;
}

SCAState extract(const conic::ConicSolution& sol, const SubproblemSpec& spec,
                 const Scenario& s, const VarLayout& lay) {
  if (sol.z.size() != lay.total) {
    throw std::invalid_argument("extract: solution/layout size mismatch");
  }
  SCAState next;
  next.F_n = PrecoderSet::zeros(lay.nt, lay.users);
  const int cols = lay.users + (lay.rs ? 1 : 0);
  for (int c = 0; c < cols; ++c) {
    const int col = lay.rs ? c : c + 1;
    next.F_n.F.col(col) = conic::extract_complex(sol.z.segment(lay.f_col(col), 2 * lay.nt));
  }
  // The precoders come from an interior method and sit strictly inside the
  // budget; rescale defensively if numerics ever put them outside.
  const double ptx = next.F_n.frobenius_sq();
  if (ptx > s.p_max * (1.0 + 1e-9)) {
    next.F_n.F *= std::sqrt(s.p_max / ptx);
  }

  next.r_n.resize(lay.n_r);
  if (lay.rs) next.r_n[0] = sol.z[lay.r_common()];
  for (int k = 0; k < lay.users; ++k) {
    next.r_n[(lay.rs ? 1 : 0) + k] = sol.z[lay.r_private(k)];
  }
  if (lay.x >= 0 && lay.y >= 0) {
    next.x_n = sol.z[lay.x];
    next.y_n = sol.z[lay.y];
  } else {
    next.x_n = std::sqrt(std::max(0.0, next.r_n.sum()));
    next.y_n = total_power(next.F_n, s, sum_se(next.F_n, s));
  }
  next.objective_n = sol.objective / kLn2;
  next.true_objective_n = scalarized_objective(spec.approach, spec.w, next.F_n, s);
  return next;
}

}  // namespace rsopt
