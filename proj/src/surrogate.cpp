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

#include "rsopt/surrogate.hpp"

#include <cmath>
#include <stdexcept>

namespace rsopt {

namespace {

// |h_k^H f_col|^2 at the expansion precoder.
double gain_sq(const Scenario& s, const PrecoderSet& F, int k, int col) {
  return std::norm(s.H.col(k).dot(F.F.col(col)));
}

// Interference-plus-noise seen by the stream: private streams other than k
// for a private stream, all private streams for the common stream.
double stream_inpn(const Scenario& s, const PrecoderSet& F, Stream st) {
  double p = s.sigma2[st.user];
  for (int i = 0; i < s.users(); ++i) {
    if (!st.is_common() && i == st.user) continue;
    p += gain_sq(s, F, st.user, i + 1);
  }
  return p;
}

int stream_col(Stream st) { return st.is_common() ? 0 : st.user + 1; }

}  // namespace

PhiCoeffs phi_coeffs(double x_n, double y_n) {
  if (!(y_n > 0.0) || x_n < 0.0) {
    throw std::domain_error("phi_coeffs: need y_n > 0 and x_n >= 0");
  }
  const double ratio = x_n / y_n;
  return PhiCoeffs{2.0 * ratio, -ratio * ratio};
}

Lb1Coeffs lb1_coeffs(const PrecoderSet& F_n, const Scenario& s, Stream stream) {
  const int k = stream.user;
  const int col = stream_col(stream);

  const double inpn = stream_inpn(s, F_n, stream);
  const double signal = gain_sq(s, F_n, k, col);
  // Total received power in the stream's decode stage, including its own
  // contribution: a and b use denominators one SIC stage apart.
  const double total = inpn + signal;

  Lb1Coeffs c;
  c.stream = stream;
  c.a = 1.0 + signal / inpn;
  c.b = (s.H.col(k).dot(F_n.F.col(col)) / total) * s.H.col(k);

  const double rate_n =
      stream.is_common() ? common_rate_at_user(F_n, s, k) : private_rate(F_n, s, k);
  c.constant = rate_n - 2.0 * (c.a * c.b.dot(F_n.F.col(col))).real();
  const int i_begin = stream.is_common() ? 0 : 1;
  for (int i = i_begin; i <= s.users(); ++i) {
    c.constant += c.a * std::norm(c.b.dot(F_n.F.col(i)));
  }
  return c;
}

double lb1_eval(const Lb1Coeffs& c, const PrecoderSet& F) {
  double v = c.constant + 2.0 * (c.a * c.b.dot(F.F.col(stream_col(c.stream)))).real();
  const int i_begin = c.stream.is_common() ? 0 : 1;
  for (int i = i_begin; i <= F.users(); ++i) {
    v -= c.a * std::norm(c.b.dot(F.F.col(i)));
  }
  return v;
}

Lb2Coeffs lb2_coeffs(const PrecoderSet& F_n, const Scenario& s, Stream stream) {
  const int k = stream.user;
  const int col = stream_col(stream);
  const double inpn = stream_inpn(s, F_n, stream);

  Lb2Coeffs c;
  c.stream = stream;
  const std::complex<double> hf = s.H.col(k).dot(F_n.F.col(col));  // h_k^H f_stream^n
  c.lin = (2.0 / inpn) * hf * s.H.col(k);
  c.quad_weight = std::norm(hf) / (inpn * inpn);
  return c;
}

double lb2_eval(const Lb2Coeffs& c, const PrecoderSet& F, const Scenario& s) {
  return c.lin.dot(F.F.col(stream_col(c.stream))).real() -
         c.quad_weight * stream_inpn(s, F, c.stream);
}

WmmseCoeffs wmmse_coeffs(const PrecoderSet& F_n, const Scenario& s, int k) {
  double total = s.sigma2[k];
  for (int i = 0; i < s.users(); ++i) {
    total += gain_sq(s, F_n, k, i + 1);
  }
  const std::complex<double> hf = s.H.col(k).dot(F_n.F.col(k + 1));

  WmmseCoeffs c;
  c.w = hf / total;
  c.q = 1.0 - std::norm(hf) / total;
  c.const_mmse = -std::log(c.q) + 1.0 - s.sigma2[k] * std::norm(c.w) / c.q - 1.0 / c.q;
  return c;
}

}  // namespace rsopt
