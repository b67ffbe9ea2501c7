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
#include <string>
#include <utility>
#include <vector>

namespace rsopt::conic {

/// Sparse affine expression sum_i coef_i * z_i + constant over the program
/// variables. Cone members and linear rows are affine expressions, so no
/// auxiliary variables are needed to put epigraph forms into cones.
class LinExpr {
 public:
  LinExpr() = default;
  explicit LinExpr(double constant) : constant_(constant) {}

  static LinExpr variable(int index, double coef = 1.0) {
    LinExpr e;
    e.add(index, coef);
    return e;
  }

  LinExpr& add(int index, double coef) {
    terms_.emplace_back(index, coef);
    return *this;
  }
  LinExpr& add_constant(double c) {
    constant_ += c;
    return *this;
  }
  LinExpr& add_scaled(const LinExpr& other, double scale) {
    for (const auto& [i, c] : other.terms_) terms_.emplace_back(i, c * scale);
    constant_ += other.constant_ * scale;
    return *this;
  }
  LinExpr scaled(double scale) const {
    LinExpr e;
    e.add_scaled(*this, scale);
    return e;
  }

  const std::vector<std::pair<int, double>>& terms() const { return terms_; }
  double constant() const { return constant_; }

  /// Dense coefficient vector of length n (terms with equal index summed).
  Eigen::VectorXd dense(int n) const;
  double value(const Eigen::VectorXd& z) const;

 private:
  std::vector<std::pair<int, double>> terms_;
  double constant_ = 0.0;
};

enum class Relation { kLessEqual, kEqual };
enum class ConeKind { kSoc, kRsoc, kExp };

/// Canonical real-valued cone program: maximize c^T z subject to linear
/// rows (<= / ==) and cone memberships of affine expressions.
///
///   soc :  rows[0] >= || (rows[1], ..., rows[m-1]) ||_2
///   rsoc:  2 * rows[0] * rows[1] >= sum_{i>=2} rows[i]^2,  rows[0], rows[1] >= 0
///   exp :  rows[1] * exp(rows[0] / rows[1]) <= rows[2],    rows[1] > 0
class ConicProgram {
 public:
  int add_variable(std::string name);
  int n_vars() const { return static_cast<int>(names_.size()); }
  const std::string& var_name(int i) const { return names_.at(i); }

  /// Objective is always maximize.
  void set_objective(int var, double coef);

  void add_linear(LinExpr e, Relation rel, double rhs, std::string label = {});
  void add_cone(ConeKind kind, std::vector<LinExpr> rows, std::string label = {});

  struct LinearRow {
    LinExpr expr;
    Relation rel;
    double rhs;
    std::string label;
  };
  struct ConeBlock {
    ConeKind kind;
    std::vector<LinExpr> rows;
    std::string label;
  };

  const std::vector<LinearRow>& linear_rows() const { return linear_rows_; }
  const std::vector<ConeBlock>& cones() const { return cones_; }
  const Eigen::VectorXd objective_dense() const;

  int count_cones(ConeKind kind) const;
  /// First cone block carrying the given label, or nullptr.
  const ConeBlock* find_cone(const std::string& label) const;

  /// Throws std::invalid_argument on out-of-range indices, malformed cones,
  /// or variables that appear in no constraint and not in the objective.
  void validate() const;

  /// Human-readable text serialization for debugging.
  std::string dump() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<int, double>> objective_;
  std::vector<LinearRow> linear_rows_;
  std::vector<ConeBlock> cones_;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kNumericalTrouble };

const char* to_string(SolveStatus s);

struct SolveOptions {
  double tol = 1e-8;         ///< relative objective gap target
  double ball_radius = 1e6;  ///< trust ball ||z|| <= R; solutions must lie inside
  double mu = 20.0;          ///< barrier parameter multiplier per outer step
  int max_newton = 80;       ///< Newton steps per centering
  int max_outer = 64;
  bool verbose = false;      ///< per-stage progress on stderr
};

struct ConicSolution {
  Eigen::VectorXd z;
  double objective = 0.0;
  SolveStatus status = SolveStatus::kNumericalTrouble;
  double primal_residual = 0.0;  ///< max linear/cone violation at z
  double rel_gap = 0.0;          ///< certified (nu/t) / (1 + |objective|)
  int newton_steps = 0;
  std::string message;

  bool usable(double gap_limit) const {
    return status == SolveStatus::kOptimal ||
           (status == SolveStatus::kNumericalTrouble && z.size() > 0 &&
            rel_gap <= gap_limit);
  }
};

/// Path-following barrier solver over the standard log barriers of the
/// nonnegative orthant, the (rotated) second-order cone and the exponential
/// cone. For a feasible bounded program the returned objective is within
/// tol * (1 + |objective|) of the optimum; infeasibility and unboundedness
/// are reported as statuses, never as a silent wrong answer. Deterministic
/// for fixed inputs.
///
/// `interior_hint`, when non-empty and strictly feasible, skips the
/// feasibility phase.
ConicSolution solve(const ConicProgram& p, const SolveOptions& opts = {},
                    const Eigen::VectorXd& interior_hint = {});

// Complex <-> real embedding: a complex vector of length m maps to an
// interleaved real vector (Re v_0, Im v_0, Re v_1, ...) of length 2m.
Eigen::VectorXd embed_complex(const Eigen::VectorXcd& v);
Eigen::VectorXcd extract_complex(const Eigen::VectorXd& z);

/// Affine expressions of Re{h^H f} and Im{h^H f} over the embedded
/// coordinates of f, which start at variable index `f_base`.
std::pair<LinExpr, LinExpr> inner_product_rows(const Eigen::VectorXcd& h, int f_base);

}  // namespace rsopt::conic
