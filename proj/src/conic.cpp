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

#include "rsopt/conic.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace rsopt::conic {

Eigen::VectorXd LinExpr::dense(int n) const {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  for (const auto& [i, c] : terms_) a[i] += c;
  return a;
}

double LinExpr::value(const Eigen::VectorXd& z) const {
  double v = constant_;
  for (const auto& [i, c] : terms_) v += c * z[i];
  return v;
}

int ConicProgram::add_variable(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<int>(names_.size()) - 1;
}

void ConicProgram::set_objective(int var, double coef) {
  objective_.emplace_back(var, coef);
}

void ConicProgram::add_linear(LinExpr e, Relation rel, double rhs, std::string label) {
  linear_rows_.push_back({std::move(e), rel, rhs, std::move(label)});
}

void ConicProgram::add_cone(ConeKind kind, std::vector<LinExpr> rows, std::string label) {
  cones_.push_back({kind, std::move(rows), std::move(label)});
}

const Eigen::VectorXd ConicProgram::objective_dense() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n_vars());
  for (const auto& [i, v] : objective_) c[i] += v;
  return c;
}

int ConicProgram::count_cones(ConeKind kind) const {
  int n = 0;
  for (const auto& c : cones_) n += (c.kind == kind) ? 1 : 0;
  return n;
}

const ConicProgram::ConeBlock* ConicProgram::find_cone(const std::string& label) const {
  for (const auto& c : cones_) {
    if (c.label == label) return &c;
  }
  return nullptr;
}

void ConicProgram::validate() const {
  const int n = n_vars();
  std::set<int> used;
  auto check_expr = [&](const LinExpr& e) {
    for (const auto& [i, c] : e.terms()) {
      if (i < 0 || i >= n) throw std::invalid_argument("ConicProgram: variable index out of range");
      if (!std::isfinite(c)) throw std::invalid_argument("ConicProgram: non-finite coefficient");
      used.insert(i);
    }
    if (!std::isfinite(e.constant())) throw std::invalid_argument("ConicProgram: non-finite constant");
  };
  for (const auto& [i, c] : objective_) {
    if (i < 0 || i >= n) throw std::invalid_argument("ConicProgram: objective index out of range");
    if (!std::isfinite(c)) throw std::invalid_argument("ConicProgram: non-finite objective");
    used.insert(i);
  }
  for (const auto& row : linear_rows_) {
    check_expr(row.expr);
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("ConicProgram: non-finite rhs");
  }
  for (const auto& cone : cones_) {
    const size_t m = cone.rows.size();
    switch (cone.kind) {
      case ConeKind::kSoc:
        if (m < 1) throw std::invalid_argument("ConicProgram: soc needs >= 1 row");
        break;
      case ConeKind::kRsoc:
        if (m < 2) throw std::invalid_argument("ConicProgram: rsoc needs >= 2 rows");
        break;
      case ConeKind::kExp:
        if (m != 3) throw std::invalid_argument("ConicProgram: exp needs exactly 3 rows");
        break;
    }
    for (const auto& r : cone.rows) check_expr(r);
  }
  for (int i = 0; i < n; ++i) {
    if (!used.count(i)) {
      throw std::invalid_argument("ConicProgram: variable '" + names_[i] +
                                  "' appears in no constraint or objective");
    }
  }
}

namespace {
void print_expr(std::ostringstream& os, const ConicProgram& p, const LinExpr& e) {
  bool first = true;
  for (const auto& [i, c] : e.terms()) {
    os << (first ? "" : " + ") << c << "*" << p.var_name(i);
    first = false;
  }
  if (e.constant() != 0.0 || first) os << (first ? "" : " + ") << e.constant();
}
}  // namespace

std::string ConicProgram::dump() const {
  std::ostringstream os;
  os << "maximize ";
  bool first = true;
  for (const auto& [i, c] : objective_) {
    os << (first ? "" : " + ") << c << "*" << names_[i];
    first = false;
  }
  os << "\nsubject to\n";
  for (const auto& row : linear_rows_) {
    os << "  ";
    print_expr(os, *this, row.expr);
    os << (row.rel == Relation::kLessEqual ? " <= " : " == ") << row.rhs;
    if (!row.label.empty()) os << "   [" << row.label << "]";
    os << "\n";
  }
  for (const auto& cone : cones_) {
    switch (cone.kind) {
      case ConeKind::kSoc: os << "  soc("; break;
      case ConeKind::kRsoc: os << "  rsoc("; break;
      case ConeKind::kExp: os << "  exp("; break;
    }
    for (size_t i = 0; i < cone.rows.size(); ++i) {
      if (i) os << "; ";
      print_expr(os, *this, cone.rows[i]);
    }
    os << ")";
    if (!cone.label.empty()) os << "   [" << cone.label << "]";
    os << "\n";
  }
  return os.str();
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kNumericalTrouble: return "numerical_trouble";
  }
  return "unknown";
}

Eigen::VectorXd embed_complex(const Eigen::VectorXcd& v) {
  Eigen::VectorXd z(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    z[2 * i] = v[i].real();
    z[2 * i + 1] = v[i].imag();
  }
  return z;
}

Eigen::VectorXcd extract_complex(const Eigen::VectorXd& z) {
  if (z.size() % 2 != 0) {
    throw std::invalid_argument("extract_complex: length must be even");
  }
  Eigen::VectorXcd v(z.size() / 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = std::complex<double>(z[2 * i], z[2 * i + 1]);
  }
  return v;
}

std::pair<LinExpr, LinExpr> inner_product_rows(const Eigen::VectorXcd& h, int f_base) {
  // h^H f = sum_i conj(h_i) f_i with f_i = z[f_base+2i] + j z[f_base+2i+1].
  LinExpr re, im;
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    re.add(f_base + 2 * static_cast<int>(i), h[i].real());
    re.add(f_base + 2 * static_cast<int>(i) + 1, h[i].imag());
    im.add(f_base + 2 * static_cast<int>(i), -h[i].imag());
    im.add(f_base + 2 * static_cast<int>(i) + 1, h[i].real());
  }
  return {re, im};
}

}  // namespace rsopt::conic
