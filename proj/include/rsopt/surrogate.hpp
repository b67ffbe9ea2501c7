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
#include <complex>

#include "rsopt/model.hpp"

namespace rsopt {

// Expansion-point coefficients of the concave minorants used by the SCA
// loop. Every bound is tangent to the exact expression at the expansion
// precoder and lies below it everywhere else; the unit tests assert both
// properties by sampling.

/// Linearization of the quadratic-over-linear function x^2/y at (x_n, y_n):
///   phi(x, y) = slope_x * x + slope_y * y <= x^2 / y  for all y > 0,
/// with equality at the expansion point.
struct PhiCoeffs {
  double slope_x = 0.0;  ///< 2 x_n / y_n
  double slope_y = 0.0;  ///< -(x_n / y_n)^2

  double eval(double x, double y) const { return slope_x * x + slope_y * y; }
};

/// Throws std::domain_error unless y_n > 0 and x_n >= 0.
PhiCoeffs phi_coeffs(double x_n, double y_n);

enum class StreamKind { kPrivate, kCommon };

/// Identifies one rate expression: user k's private stream, or the common
/// stream as decoded at user k.
struct Stream {
  StreamKind kind = StreamKind::kPrivate;
  int user = 0;

  static Stream priv(int k) { return {StreamKind::kPrivate, k}; }
  static Stream common_at(int k) { return {StreamKind::kCommon, k}; }
  bool is_common() const { return kind == StreamKind::kCommon; }
};

/// Full-rate minorant coefficients (nats):
///   R(F) >= constant + 2 Re{a b^H f_stream} - a sum_{i in set} |b^H f_i|^2,
/// where `set` spans the private columns for a private stream and all
/// columns (common + private) for the common stream.
struct Lb1Coeffs {
  double a = 1.0;             ///< 1 + SINR at the expansion point, >= 1
  Eigen::VectorXcd b;         ///< length Nt
  double constant = 0.0;
  Stream stream;
};

Lb1Coeffs lb1_coeffs(const PrecoderSet& F_n, const Scenario& s, Stream stream);

/// Value of the LB I surrogate at F (nats).
double lb1_eval(const Lb1Coeffs& c, const PrecoderSet& F);

/// SINR minorant coefficients: only the inner fraction is linearized,
///   Gamma(F) = Re{lin^H f_stream} - quad_weight * r(F) <= SINR(F),
/// where r(F) is the interference-plus-noise power seen by the stream.
struct Lb2Coeffs {
  Eigen::VectorXcd lin;       ///< length Nt, coefficient of Re{lin^H f}
  double quad_weight = 0.0;   ///< >= 0
  Stream stream;
};

Lb2Coeffs lb2_coeffs(const PrecoderSet& F_n, const Scenario& s, Stream stream);

/// Value of the LB II surrogate at F (SINR domain).
double lb2_eval(const Lb2Coeffs& c, const PrecoderSet& F, const Scenario& s);

/// MMSE-equalizer form of the private-rate minorant; equivalent to LB I
/// (a = 1/q, b = h w) and used as an independent oracle in tests.
struct WmmseCoeffs {
  std::complex<double> w;   ///< MMSE equalizer h_k^H f_k^n / r_k^n
  double q = 1.0;           ///< MSE floor at the expansion point, in (0, 1]
  double const_mmse = 0.0;  ///< nats
};

WmmseCoeffs wmmse_coeffs(const PrecoderSet& F_n, const Scenario& s, int k);

}  // namespace rsopt
