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
//
// Path-following barrier solver. The program is flattened to
//   maximize c^T z   s.t.   A z = b,   s_j = M_j z + q_j in K_j,
// equalities are eliminated through a null-space basis, and the interior
// of the cone product is traversed by Newton centering of
//   t * (-c^T x) + sum_j F_j(M_j x + q_j)
// with the standard logarithmic barriers (nu = 1 / 2 / 2 / 3 for the
// nonnegative ray, SOC, rotated SOC and exponential cone). A trust ball
// ||z|| <= R bounds every recession direction, which keeps the central
// path well defined and turns unbounded problems into detectable
// ball-active solutions. Feasibility is established by a relaxation
// phase minimizing tau with s_j + tau * e_j in K_j.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "rsopt/conic.hpp"

namespace rsopt::conic {

namespace {

enum class BKind { kNonneg, kSoc, kRsoc, kExp };

struct Block {
  BKind kind;
  Eigen::MatrixXd M;
  Eigen::VectorXd q;

  int dim() const { return static_cast<int>(q.size()); }
  double nu() const {
    switch (kind) {
      case BKind::kNonneg: return 1.0;
      case BKind::kSoc: return 2.0;
      case BKind::kRsoc: return 2.0;
      case BKind::kExp: return 3.0;
    }
    return 0.0;
  }
};

bool interior(const Block& blk, const Eigen::VectorXd& s) {
  switch (blk.kind) {
    case BKind::kNonneg:
      return s[0] > 0.0;
    case BKind::kSoc: {
      if (s[0] <= 0.0) return false;
      const double d = s[0] * s[0] - s.tail(s.size() - 1).squaredNorm();
      return d > 0.0;
    }
    case BKind::kRsoc: {
      if (s[0] <= 0.0 || s[1] <= 0.0) return false;
      const double d = 2.0 * s[0] * s[1] - s.tail(s.size() - 2).squaredNorm();
      return d > 0.0;
    }
    case BKind::kExp: {
      if (s[1] <= 0.0 || s[2] <= 0.0) return false;
      return s[1] * std::log(s[2] / s[1]) - s[0] > 0.0;
    }
  }
  return false;
}

// Deficit from closed-cone membership (0 when s is in the closed cone);
// used for residual reporting only.
double closed_violation(const Block& blk, const Eigen::VectorXd& s) {
  switch (blk.kind) {
    case BKind::kNonneg:
      return std::max(0.0, -s[0]);
    case BKind::kSoc:
      return std::max(0.0, s.tail(s.size() - 1).norm() - s[0]);
    case BKind::kRsoc: {
      double v = std::max({0.0, -s[0], -s[1]});
      const double d = 2.0 * std::max(s[0], 0.0) * std::max(s[1], 0.0) -
                       s.tail(s.size() - 2).squaredNorm();
      if (d < 0.0) v = std::max(v, std::sqrt(-d));
      return v;
    }
    case BKind::kExp: {
      double v = std::max(0.0, -s[2]);
      if (s[1] <= 0.0) return std::max({v, -s[1], s[0]});
      return std::max(v, -(s[1] * std::log(std::max(s[2], 1e-300) / s[1]) - s[0]));
    }
  }
  return 0.0;
}

// Barrier value, gradient and Hessian in s-space. Caller guarantees that s
// is strictly interior.
double barrier(const Block& blk, const Eigen::VectorXd& s, Eigen::VectorXd& grad,
               Eigen::MatrixXd& hess) {
  const int d = blk.dim();
  grad.setZero(d);
  hess.setZero(d, d);
  switch (blk.kind) {
    case BKind::kNonneg: {
      grad[0] = -1.0 / s[0];
      hess(0, 0) = 1.0 / (s[0] * s[0]);
      return -std::log(s[0]);
    }
    case BKind::kSoc: {
      const auto tail = s.tail(d - 1);
      const double det = s[0] * s[0] - tail.squaredNorm();
      Eigen::VectorXd dd(d);
      dd[0] = 2.0 * s[0];
      dd.tail(d - 1) = -2.0 * tail;
      grad = -dd / det;
      hess = dd * dd.transpose() / (det * det);
      hess(0, 0) -= 2.0 / det;
      hess.bottomRightCorner(d - 1, d - 1) += (2.0 / det) * Eigen::MatrixXd::Identity(d - 1, d - 1);
      return -std::log(det);
    }
    case BKind::kRsoc: {
      const auto rest = s.tail(d - 2);
      const double det = 2.0 * s[0] * s[1] - rest.squaredNorm();
      Eigen::VectorXd dd(d);
      dd[0] = 2.0 * s[1];
      dd[1] = 2.0 * s[0];
      dd.tail(d - 2) = -2.0 * rest;
      grad = -dd / det;
      hess = dd * dd.transpose() / (det * det);
      hess(0, 1) -= 2.0 / det;
      hess(1, 0) -= 2.0 / det;
      hess.bottomRightCorner(d - 2, d - 2) += (2.0 / det) * Eigen::MatrixXd::Identity(d - 2, d - 2);
      return -std::log(det);
    }
    case BKind::kExp: {
      const double u = s[0], v = s[1], w = s[2];
      const double l = std::log(w / v);
      const double g = v * l - u;
      Eigen::Vector3d dg(-1.0, l - 1.0, v / w);
      Eigen::Matrix3d d2g = Eigen::Matrix3d::Zero();
      d2g(1, 1) = -1.0 / v;
      d2g(1, 2) = 1.0 / w;
      d2g(2, 1) = 1.0 / w;
      d2g(2, 2) = -v / (w * w);
      grad = -dg / g;
      grad[1] -= 1.0 / v;
      grad[2] -= 1.0 / w;
      hess = dg * dg.transpose() / (g * g) - d2g / g;
      hess(1, 1) += 1.0 / (v * v);
      hess(2, 2) += 1.0 / (w * w);
      return -std::log(g) - std::log(v) - std::log(w);
    }
  }
  return 0.0;
}

struct Flattened {
  int n = 0;
  Eigen::VectorXd c;
  Eigen::MatrixXd A;  // equality rows
  Eigen::VectorXd b;
  std::vector<Block> blocks;
};

Flattened flatten(const ConicProgram& p, double ball_radius) {
  Flattened f;
  f.n = p.n_vars();
  f.c = p.objective_dense();

  std::vector<Eigen::VectorXd> eq_rows;
  std::vector<double> eq_rhs;
  for (const auto& row : p.linear_rows()) {
    const Eigen::VectorXd a = row.expr.dense(f.n);
    if (row.rel == Relation::kEqual) {
      eq_rows.push_back(a);
      eq_rhs.push_back(row.rhs - row.expr.constant());
    } else {
      Block blk;
      blk.kind = BKind::kNonneg;
      blk.M = -a.transpose();
      blk.q = Eigen::VectorXd::Constant(1, row.rhs - row.expr.constant());
      f.blocks.push_back(std::move(blk));
    }
  }
  f.A.resize(static_cast<int>(eq_rows.size()), f.n);
  f.b.resize(static_cast<int>(eq_rows.size()));
  for (size_t i = 0; i < eq_rows.size(); ++i) {
    f.A.row(static_cast<int>(i)) = eq_rows[i];
    f.b[static_cast<int>(i)] = eq_rhs[i];
  }

  for (const auto& cone : p.cones()) {
    Block blk;
    switch (cone.kind) {
      case ConeKind::kSoc: blk.kind = BKind::kSoc; break;
      case ConeKind::kRsoc: blk.kind = BKind::kRsoc; break;
      case ConeKind::kExp: blk.kind = BKind::kExp; break;
    }
    const int d = static_cast<int>(cone.rows.size());
    blk.M.resize(d, f.n);
    blk.q.resize(d);
    for (int i = 0; i < d; ++i) {
      blk.M.row(i) = cone.rows[i].dense(f.n);
      blk.q[i] = cone.rows[i].constant();
    }
    f.blocks.push_back(std::move(blk));
  }

  // Trust ball ||z|| <= R over all variables.
  Block ball;
  ball.kind = BKind::kSoc;
  ball.M.resize(f.n + 1, f.n);
  ball.M.row(0).setZero();
  ball.M.bottomRows(f.n) = Eigen::MatrixXd::Identity(f.n, f.n);
  ball.q = Eigen::VectorXd::Zero(f.n + 1);
  ball.q[0] = ball_radius;
  f.blocks.push_back(std::move(ball));
  return f;
}

// Solves H d = -g with Jacobi scaling, an LDLT factorization and one step
// of iterative refinement.
Eigen::VectorXd newton_direction(const Eigen::MatrixXd& H, const Eigen::VectorXd& g) {
  const int n = static_cast<int>(g.size());
  Eigen::VectorXd scale(n);
  for (int i = 0; i < n; ++i) {
    scale[i] = 1.0 / std::sqrt(std::max(H(i, i), 1e-300));
  }
  Eigen::MatrixXd Hs = scale.asDiagonal() * H * scale.asDiagonal();
  double ridge = 0.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(
        Hs + ridge * Eigen::MatrixXd::Identity(n, n));
    Eigen::VectorXd y = ldlt.solve(-(scale.asDiagonal() * g));
    Eigen::VectorXd d = scale.asDiagonal() * y;
    // one refinement pass in the original variables
    Eigen::VectorXd r = H * d + g;
    Eigen::VectorXd corr = scale.asDiagonal() * ldlt.solve(-(scale.asDiagonal() * r));
    d += corr;
    if (d.allFinite()) return d;
    ridge = (ridge == 0.0) ? 1e-14 : ridge * 1e3;
  }
  return Eigen::VectorXd::Zero(n);
}

struct CenterOutcome {
  bool centered = false;     ///< Newton decrement driven to (near) zero
  bool early_stop = false;
  int steps = 0;
  double lambda2 = 0.0;      ///< final squared Newton decrement

  // Small residual decrements still certify: the reported gap is inflated
  // by sqrt(nu) * lambda, which is negligible at this threshold.
  bool centered_enough() const { return centered || lambda2 * 0.5 <= 1e-5; }
};

// Newton centering of t * (-c^T x) + Phi(x). `stop` may end the descent as
// soon as the current iterate satisfies an external goal (phase I).
CenterOutcome center(const std::vector<Block>& blocks, const Eigen::VectorXd& c, double t,
                     Eigen::VectorXd& x, int max_newton,
                     const std::function<bool(const Eigen::VectorXd&)>& stop) {
  const int n = static_cast<int>(x.size());
  CenterOutcome out;

  auto psi = [&](const Eigen::VectorXd& xx) -> double {
    double val = -t * c.dot(xx);
    for (const auto& blk : blocks) {
      const Eigen::VectorXd s = blk.M * xx + blk.q;
      if (!interior(blk, s)) return std::numeric_limits<double>::infinity();
      switch (blk.kind) {
        case BKind::kNonneg: val -= std::log(s[0]); break;
        case BKind::kSoc:
          val -= std::log(s[0] * s[0] - s.tail(s.size() - 1).squaredNorm());
          break;
        case BKind::kRsoc:
          val -= std::log(2.0 * s[0] * s[1] - s.tail(s.size() - 2).squaredNorm());
          break;
        case BKind::kExp:
          val -= std::log(s[1] * std::log(s[2] / s[1]) - s[0]) + std::log(s[1]) + std::log(s[2]);
          break;
      }
    }
    return val;
  };

  Eigen::VectorXd grad(n);
  Eigen::MatrixXd hess(n, n);
  Eigen::VectorXd s_grad;
  Eigen::MatrixXd s_hess;
  double prev_lambda2 = std::numeric_limits<double>::infinity();

  for (int step = 0; step < max_newton; ++step) {
    grad = -t * c;
    hess.setZero();
    for (const auto& blk : blocks) {
      const Eigen::VectorXd s = blk.M * x + blk.q;
      barrier(blk, s, s_grad, s_hess);
      grad.noalias() += blk.M.transpose() * s_grad;
      hess.noalias() += blk.M.transpose() * s_hess * blk.M;
    }

    const Eigen::VectorXd dir = newton_direction(hess, grad);
    const double lambda2 = -grad.dot(dir);
    out.lambda2 = std::max(lambda2, 0.0);
    if (!(lambda2 > 2e-10)) {
      out.centered = true;
      out.steps = step;
      return out;
    }
    // Rounding floor: tiny decrements that stop shrinking will not improve.
    if (lambda2 <= 1e-5 && lambda2 > 0.5 * prev_lambda2) {
      out.steps = step;
      return out;
    }
    prev_lambda2 = lambda2;

    double alpha = 1.0;
    int backtracks = 0;
    const double psi0 = psi(x);
    while (backtracks < 90) {
      const Eigen::VectorXd cand = x + alpha * dir;
      const double val = psi(cand);
      if (std::isfinite(val) && val <= psi0 - 0.01 * alpha * lambda2) break;
      alpha *= 0.5;
      ++backtracks;
    }
    if (backtracks >= 90) {
      // Line search exhausted: floating-point floor at this t.
      out.steps = step;
      return out;
    }
    x += alpha * dir;
    if (stop && stop(x)) {
      out.early_stop = true;
      out.steps = step + 1;
      return out;
    }
  }
  out.steps = max_newton;
  return out;
}

double total_nu(const std::vector<Block>& blocks) {
  double nu = 0.0;
  for (const auto& blk : blocks) nu += blk.nu();
  return nu;
}

// Relaxation direction per cone: s + tau * e reaches the interior for tau
// large enough.
Eigen::VectorXd relax_dir(const Block& blk) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(blk.dim());
  switch (blk.kind) {
    case BKind::kNonneg: e[0] = 1.0; break;
    case BKind::kSoc: e[0] = 1.0; break;
    case BKind::kRsoc: e[0] = 1.0; e[1] = 1.0; break;
    case BKind::kExp: e[0] = -1.0; e[1] = 1.0; e[2] = 1.0; break;
  }
  return e;
}

}  // namespace

ConicSolution solve(const ConicProgram& p, const SolveOptions& opts,
                    const Eigen::VectorXd& interior_hint) {
  p.validate();
  ConicSolution sol;

  Flattened f = flatten(p, opts.ball_radius);
  const int n = f.n;

  // Equality elimination: z = z_p + N * x with N spanning ker(A).
  Eigen::VectorXd z_p = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd N = Eigen::MatrixXd::Identity(n, n);
  if (f.A.rows() > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(f.A);
    z_p = lu.solve(f.b);
    if ((f.A * z_p - f.b).lpNorm<Eigen::Infinity>() > 1e-8 * (1.0 + f.b.lpNorm<Eigen::Infinity>())) {
      sol.status = SolveStatus::kInfeasible;
      sol.message = "inconsistent equality rows";
      return sol;
    }
    if (lu.dimensionOfKernel() == 0) {
      N.resize(n, 0);
    } else {
      N = lu.kernel();
    }
  }
  const int nr = static_cast<int>(N.cols());

  std::vector<Block> blocks;
  blocks.reserve(f.blocks.size());
  for (const auto& blk : f.blocks) {
    Block r;
    r.kind = blk.kind;
    r.M = blk.M * N;
    r.q = blk.q + blk.M * z_p;
    blocks.push_back(std::move(r));
  }
  const double nu = total_nu(blocks);

  auto finish = [&](const Eigen::VectorXd& x, double gap, SolveStatus status,
                    std::string message) {
    sol.z = z_p + N * x;
    sol.objective = f.c.dot(sol.z);
    sol.status = status;
    sol.message = std::move(message);
    sol.rel_gap = gap / (1.0 + std::abs(sol.objective));
    double viol = (f.A.rows() > 0)
                      ? (f.A * sol.z - f.b).lpNorm<Eigen::Infinity>()
                      : 0.0;
    for (const auto& blk : f.blocks) {
      viol = std::max(viol, closed_violation(blk, blk.M * sol.z + blk.q));
    }
    sol.primal_residual = viol;
    return sol;
  };

  // Fully pinned by equality rows: just test membership.
  if (nr == 0) {
    const Eigen::VectorXd x0(0);
    double viol = 0.0;
    for (const auto& blk : blocks) viol = std::max(viol, closed_violation(blk, blk.q));
    return finish(x0, 0.0,
                  viol <= 1e-9 ? SolveStatus::kOptimal : SolveStatus::kInfeasible,
                  viol <= 1e-9 ? "pinned by equalities" : "pinned point outside cones");
  }

  auto strictly_interior = [&](const Eigen::VectorXd& x) {
    for (const auto& blk : blocks) {
      if (!interior(blk, blk.M * x + blk.q)) return false;
    }
    return true;
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(nr);
  bool have_start = false;

  if (interior_hint.size() == n) {
    bool ok = f.A.rows() == 0 ||
              (f.A * interior_hint - f.b).lpNorm<Eigen::Infinity>() <=
                  1e-9 * (1.0 + f.b.lpNorm<Eigen::Infinity>());
    if (ok) {
      Eigen::VectorXd cand;
      if (f.A.rows() == 0) {
        cand = interior_hint;
      } else {
        cand = N.colPivHouseholderQr().solve(interior_hint - z_p);
      }
      if (strictly_interior(cand)) {
        x = cand;
        have_start = true;
      }
    }
  }

  int newton_total = 0;

  if (!have_start) {
    // Phase I: minimize tau with every block relaxed along its interior
    // direction. Early exit as soon as tau is safely negative.
    double q_scale = 1.0;
    for (const auto& blk : blocks) {
      q_scale = std::max(q_scale, blk.q.lpNorm<Eigen::Infinity>());
    }
    const double margin = 1e-10 * q_scale;

    std::vector<Block> ph1 = blocks;
    for (auto& blk : ph1) {
      Eigen::MatrixXd M(blk.M.rows(), nr + 1);
      M.leftCols(nr) = blk.M;
      M.col(nr) = relax_dir(blk);
      blk.M = std::move(M);
    }
    // The relaxation variable itself is kept inside the trust ball to bound
    // the phase-I path.
    {
      Block tau_ball;
      tau_ball.kind = BKind::kNonneg;
      tau_ball.M = Eigen::MatrixXd::Zero(1, nr + 1);
      tau_ball.M(0, nr) = -1.0;
      tau_ball.q = Eigen::VectorXd::Constant(1, opts.ball_radius);
      ph1.push_back(std::move(tau_ball));
    }

    Eigen::VectorXd x1 = Eigen::VectorXd::Zero(nr + 1);
    double tau0 = 1.0;
    auto ph1_interior = [&](double tau) {
      x1[nr] = tau;
      for (const auto& blk : ph1) {
        if (!interior(blk, blk.M * x1 + blk.q)) return false;
      }
      return true;
    };
    while (!ph1_interior(tau0)) {
      tau0 *= 2.0;
      if (tau0 > 1e14) {
        sol.status = SolveStatus::kNumericalTrouble;
        sol.message = "phase I could not find a relaxed interior point";
        return sol;
      }
    }
    x1[nr] = tau0 * 1.5 + 1.0;

    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(nr + 1);
    c1[nr] = -1.0;  // maximize -tau
    const double nu1 = total_nu(ph1);
    auto feasible_now = [&](const Eigen::VectorXd& xx) { return xx[nr] < -margin; };

    double t = 1.0;
    bool found = feasible_now(x1);
    for (int outer = 0; outer < opts.max_outer && !found; ++outer) {
      CenterOutcome c_out = center(ph1, c1, t, x1, opts.max_newton, feasible_now);
      newton_total += c_out.steps;
      if (c_out.early_stop || feasible_now(x1)) {
        found = true;
        break;
      }
      const double gap = nu1 / t;
      if (gap <= 1e-9 * (1.0 + std::abs(x1[nr]))) break;
      t *= opts.mu;
    }
    if (!found) {
      sol.status = SolveStatus::kInfeasible;
      sol.message = "phase I minimum relaxation is nonnegative";
      sol.newton_steps = newton_total;
      return sol;
    }
    x = x1.head(nr);
    if (!strictly_interior(x)) {
      sol.status = SolveStatus::kNumericalTrouble;
      sol.message = "phase I produced a non-interior point";
      sol.newton_steps = newton_total;
      return sol;
    }
  }

  // Phase II: follow the central path until the certified gap meets the
  // requested relative tolerance. The last stage lands on exactly the t the
  // target needs instead of overshooting by a full factor mu.
  const Eigen::VectorXd c_reduced = N.transpose() * f.c;
  double t = std::max(1.0, nu / (1.0 + std::abs(f.c.dot(z_p + N * x))));
  double gap = nu / t;
  bool reached = false;
  for (int outer = 0; outer < opts.max_outer; ++outer) {
    CenterOutcome c_out = center(blocks, c_reduced, t, x, opts.max_newton, nullptr);
    newton_total += c_out.steps;
    const double obj = f.c.dot(z_p + N * x);
    gap = (nu + std::sqrt(nu * c_out.lambda2)) / t;
    if (opts.verbose) {
      std::fprintf(stderr,
                   "[conic] stage %d: t=%.3e steps=%d lambda2=%.3e obj=%.12f gap=%.3e\n",
                   outer, t, c_out.steps, c_out.lambda2, obj, gap);
    }
    if (!c_out.centered_enough()) {
      // Centering stalled before the target gap; report what was achieved.
      break;
    }
    const double target = opts.tol * (1.0 + std::abs(obj));
    if (gap <= target) {
      reached = true;
      break;
    }
    t = std::min(t * opts.mu, 2.0 * nu / target);
  }

  sol.newton_steps = newton_total;
  const Eigen::VectorXd z_final = z_p + N * x;
  if (z_final.norm() >= 0.5 * opts.ball_radius) {
    return finish(x, gap, SolveStatus::kUnbounded,
                  "trust ball active; objective unbounded or growing beyond radius");
  }
  if (reached) {
    return finish(x, gap, SolveStatus::kOptimal, "");
  }
  return finish(x, gap, SolveStatus::kNumericalTrouble,
                "barrier stalled before reaching requested tolerance");
}

}  // namespace rsopt::conic
