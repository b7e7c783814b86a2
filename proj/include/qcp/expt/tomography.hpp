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
#include <map>
#include <string>

#include "qcp/common.hpp"
#include "qcp/device.hpp"
#include "qcp/expt/experiment.hpp"

namespace qcp::expt {

/// 4x4 density matrix, row-major, qubit 0 as the least significant index
/// bit.
using DensityMatrix = std::array<std::array<cdouble, 4>, 4>;

/// Two-letter labels "IX", "ZZ", ... with qubit 0 first. All 15
/// non-identity labels.
const std::array<std::string, 15>& two_qubit_pauli_labels();

/// Linear inversion: rho = (1/4) sum_P <P> P with <II> = 1. Requires all
/// 15 non-identity expectations. Hermitian by construction, unit trace;
/// possibly non-positive (reported as-is).
DensityMatrix linear_inversion(const std::map<std::string, double>& expectations);

/// <psi| rho |psi> for a pure target.
double fidelity_to_pure(const DensityMatrix& rho,
                        const std::array<cdouble, 4>& psi);

std::array<cdouble, 4> bell_phi_plus_state();
DensityMatrix pure_density(const std::array<cdouble, 4>& psi);

/// Pauli expectation tr(rho P) for a two-letter label.
double pauli_expectation(const DensityMatrix& rho, const std::string& label);

struct TomographyResult {
  DensityMatrix rho;
  double fidelity = 0.0;  // against |Phi+>
  std::vector<ExpectationEstimate> estimates;
  uint64_t compile_count = 0;
};

/// Full Bell-state tomography pipeline on qubits {0, 1}: one parametric
/// binary, 15 Pauli settings, optional symmetrization + calibration, then
/// linear inversion.
TomographyResult bell_tomography(const DeviceModel& device, uint64_t shots,
                                 Estimation estimation, uint64_t seed);

}  // namespace qcp::expt
