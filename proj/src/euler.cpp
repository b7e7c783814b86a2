// Copyright 2026 The qcp developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "qcp/compiler/euler.hpp"

namespace qcp::compiler {
namespace {

constexpr cdouble kI{0.0, 1.0};

int zero_count(const EulerAngles& a) {
  auto is_zero = [](double v) { return std::abs(v) < 1e-12; };
  return is_zero(a.alpha) + is_zero(a.beta) + is_zero(a.gamma);
}

}  // namespace

Mat2 rx_matrix(double theta) {
  double c = std::cos(theta / 2);
  double s = std::sin(theta / 2);
  return Mat2{{{{c, -kI * s}, {-kI * s, c}}}};
}

Mat2 ry_matrix(double theta) {
  double c = std::cos(theta / 2);
  double s = std::sin(theta / 2);
  return Mat2{{{{c, -s}, {s, c}}}};
}

Mat2 rz_matrix(double theta) {
  return Mat2{{{{std::exp(-kI * (theta / 2)), 0.0},
                {0.0, std::exp(kI * (theta / 2))}}}};
}

Mat2 h_matrix() {
  double s = 1.0 / std::sqrt(2.0);
  return Mat2{{{{s, s}, {s, -s}}}};
}

Mat2 x_matrix() { return Mat2{{{{0.0, 1.0}, {1.0, 0.0}}}}; }

Mat2 y_matrix() { return Mat2{{{{0.0, -kI}, {kI, 0.0}}}}; }

Mat2 z_matrix() { return Mat2{{{{1.0, 0.0}, {0.0, -1.0}}}}; }

bool is_unitary(const Mat2& u, double tol) {
  // u * u^dagger == I
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cdouble sum = u.m[i][0] * std::conj(u.m[j][0]) +
                    u.m[i][1] * std::conj(u.m[j][1]);
      cdouble want = (i == j) ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
      if (std::abs(sum - want) > tol) return false;
    }
  }
  return true;
}

double distance_up_to_phase(const Mat2& a, const Mat2& b) {
  // Align phases on the largest entry of b, then compare elementwise.
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(b.m[i][j]) > best) {
        best = std::abs(b.m[i][j]);
        bi = i;
        bj = j;
      }
    }
  }
  if (best < 1e-300) return 1e300;
  cdouble phase = a.m[bi][bj] / b.m[bi][bj];
  double norm = std::abs(phase);
  if (norm < 1e-300) return 1e300;
  phase /= norm;
  double dist = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      dist = std::max(dist, std::abs(a.m[i][j] - phase * b.m[i][j]));
    }
  }
  return dist;
}

Mat2 u_matrix(double alpha, double beta, double gamma) {
  return rz_matrix(gamma) * rx_matrix(-kPi / 2) * rz_matrix(beta) *
         rx_matrix(kPi / 2) * rz_matrix(alpha);
}

EulerAngles euler_decompose(const Mat2& u) {
  if (!is_unitary(u, 1e-10)) {
    throw CompileError("euler_decompose: input matrix is not unitary");
  }

  // Project into SU(2): divide by sqrt(det).
  cdouble det = u.m[0][0] * u.m[1][1] - u.m[0][1] * u.m[1][0];
  cdouble root = std::sqrt(det);
  Mat2 su = u;
  for (auto& row : su.m) {
    for (auto& entry : row) entry /= root;
  }

  const cdouble a = su.m[0][0];
  const cdouble b = su.m[0][1];

  double raw_alpha, raw_beta, raw_gamma;
  if (std::abs(b) < 1e-12) {
    // Diagonal: pure Z rotation.
    raw_beta = 0.0;
    raw_gamma = 0.0;
    raw_alpha = -2.0 * std::arg(a);
  } else if (std::abs(a) < 1e-12) {
    // Anti-diagonal: beta = pi, alpha - gamma determined.
    raw_beta = kPi;
    raw_gamma = 0.0;
    raw_alpha = 2.0 * std::arg(-b);
  } else {
    raw_beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
    double sum = -2.0 * std::arg(a);   // alpha + gamma
    double diff = 2.0 * std::arg(-b);  // alpha - gamma
    raw_alpha = (sum + diff) / 2.0;
    raw_gamma = (sum - diff) / 2.0;
  }

  EulerAngles primary{canonical_angle(raw_alpha), canonical_angle(raw_beta),
                      canonical_angle(raw_gamma)};
  EulerAngles flipped{canonical_angle(raw_alpha - kPi),
                      canonical_angle(-raw_beta),
                      canonical_angle(raw_gamma + kPi)};

  EulerAngles chosen = primary;
  int zp = zero_count(primary);
  int zf = zero_count(flipped);
  if (zf > zp || (zf == zp && flipped.beta > primary.beta)) {
    chosen = flipped;
  }

  if (distance_up_to_phase(u_matrix(chosen.alpha, chosen.beta, chosen.gamma),
                           u) > 1e-9) {
    throw CompileError("euler_decompose: reconstruction check failed");
  }
  return chosen;
}

}  // namespace qcp::compiler
