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

#pragma once

#include <array>

#include "qcp/common.hpp"

namespace qcp::compiler {

struct Mat2 {
  // Row-major: m[row][col].
  std::array<std::array<cdouble, 2>, 2> m{};

  static Mat2 identity() { return Mat2{{{{1.0, 0.0}, {0.0, 1.0}}}}; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
      }
    }
    return r;
  }
};

Mat2 rx_matrix(double theta);
Mat2 ry_matrix(double theta);
Mat2 rz_matrix(double theta);
Mat2 h_matrix();
Mat2 x_matrix();
Mat2 y_matrix();
Mat2 z_matrix();

bool is_unitary(const Mat2& u, double tol);

/// Max elementwise distance between a and e^{i phase} b, minimized over the
/// global phase.
double distance_up_to_phase(const Mat2& a, const Mat2& b);

/// ZXZXZ template: U(alpha, beta, gamma) =
///   Rz(gamma) Rx(-pi/2) Rz(beta) Rx(pi/2) Rz(alpha),
/// i.e. Rz(gamma) Ry(beta) Rz(alpha) with the Y rotation realized by the
/// two fixed X90 pulses.
Mat2 u_matrix(double alpha, double beta, double gamma);

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Decomposes a 2x2 unitary into U(alpha, beta, gamma) up to global phase.
/// Angles are canonicalized to (-pi, pi]; of the two equivalent solutions
/// (alpha, beta, gamma) and (alpha - pi, -beta, gamma + pi), the one with
/// more exactly-zero angles wins, with ties resolved toward beta >= 0.
/// Throws CompileError if u is not unitary within 1e-10.
EulerAngles euler_decompose(const Mat2& u);

}  // namespace qcp::compiler
