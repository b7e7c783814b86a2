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

#include "qcp/common.hpp"

#include <charconv>
#include <cstdio>

namespace qcp {

double canonical_angle(double theta) {
  double reduced = std::fmod(theta, 2.0 * kPi);
  if (reduced <= -kPi) reduced += 2.0 * kPi;
  if (reduced > kPi) reduced -= 2.0 * kPi;
  if (reduced == 0.0) reduced = 0.0;  // normalize -0.0
  return reduced;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace qcp
