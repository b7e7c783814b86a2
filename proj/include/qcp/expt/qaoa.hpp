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

#include "qcp/device.hpp"
#include "qcp/expt/experiment.hpp"

namespace qcp::expt {

using EdgeList = std::vector<std::pair<uint32_t, uint32_t>>;

/// p=1 Max-Cut QAOA ansatz over the edges: |+...+> preparation, the cost
/// unitary exp(-i gamma ZZ) per edge, and the mixer exp(-i beta X) per
/// qubit. The REAL slots `gamma_phase` and `beta_phase` hold the rotation
/// angles, i.e. 2*gamma and 2*beta.
quil::Program maxcut_ansatz(const EdgeList& edges);

struct QaoaOptions {
  double beta = 0.39269908169872414;  // pi/8, the fixed mixer angle
  uint32_t gamma_points = 100;        // grid over [-pi/2, pi/2]
  uint64_t shots = 10000;             // per point per edge setting
  Estimation estimation = Estimation::Sampled;
  uint64_t seed = 0;
};

struct QaoaPoint {
  double gamma = 0.0;
  std::vector<ExpectationEstimate> edge_zz;  // one per edge
};

struct QaoaResult {
  EdgeList edges;
  double beta = 0.0;
  std::vector<QaoaPoint> points;
  uint64_t compile_count = 0;
};

/// Sweeps gamma with fixed beta, estimating the symmetrized + corrected
/// <ZZ> on every edge from a single parametric binary.
QaoaResult maxcut_qaoa(const EdgeList& edges, const DeviceModel& device,
                       const QaoaOptions& options);

std::string qaoa_result_to_csv(const QaoaResult& result);
std::string qaoa_result_to_json(const QaoaResult& result);

}  // namespace qcp::expt
