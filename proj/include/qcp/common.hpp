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

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qcp {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

using cdouble = std::complex<double>;

/// Source position of a parse diagnostic (1-based).
struct SourcePos {
  int line = 0;
  int column = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourcePos pos)
      : std::runtime_error(std::to_string(pos.line) + ":" +
                           std::to_string(pos.column) + ": " + message),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExecutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduce an angle to (-pi, pi], with ties at -pi mapped to +pi.
double canonical_angle(double theta);

/// Shortest representation of a double that parses back to the same value.
std::string format_double(double value);

/// True if |a - b| <= tol elementwise for complex values.
inline bool approx_equal(cdouble a, cdouble b, double tol) {
  return std::abs(a - b) <= tol;
}

}  // namespace qcp
