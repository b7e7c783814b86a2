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

#include <functional>

#include "qcp/device.hpp"
#include "qcp/expt/experiment.hpp"

namespace qcp::expt {

/// H = g0 + g1 Z0 + g2 Z1 + g3 Z0Z1 + g4 Y0Y1 + g5 X0X1, with the
/// convention that the Hartree-Fock reference |01> (qubit 0 the left
/// label) has <Z0> = +1 and <Z1> = -1.
struct H2Coefficients {
  double bond_length = 0.0;  // angstrom
  std::array<double, 6> g{};
};

/// CSV with header R_angstrom,g0,g1,g2,g3,g4,g5 ('#' comment lines allowed).
std::vector<H2Coefficients> parse_h2_coefficients(const std::string& text);
std::vector<H2Coefficients> load_h2_coefficients(const std::string& path);

/// |Psi(theta)> = exp(-i theta X0 Y1) |01>, lowered as a phase gadget in
/// rotated bases. The REAL slot `ucc_phase` holds the RZ argument, i.e.
/// 2*theta.
quil::Program ucc_h2_ansatz();

struct VqeThetaSample {
  double theta = 0.0;
  double energy = 0.0;
  double energy_std_err = 0.0;
};

struct VqeResult {
  double bond_length = 0.0;
  std::vector<VqeThetaSample> scan;
  double grid_min_energy = 0.0;
  double grid_min_theta = 0.0;
  // E(theta) is exactly a + b cos 2theta + c sin 2theta for this ansatz;
  // the least-squares sinusoid over the scan gives the continuum minimum.
  double min_energy = 0.0;
  double min_theta = 0.0;
  uint64_t compile_count = 0;
};

struct VqeOptions {
  uint32_t theta_points = 250;  // grid over [-pi/2, pi/2]
  uint64_t shots = 10000;       // per setting per theta
  Estimation estimation = Estimation::Sampled;
  uint64_t seed = 0;
};

/// Grid-scan VQE for one bond length: three measurement settings (the
/// Z-family is derived from the ZZ setting's outcomes, plus YY and XX),
/// one parametric binary for the whole scan.
VqeResult vqe_h2_scan(const H2Coefficients& coefficients,
                      const DeviceModel& device, const VqeOptions& options);

/// Scan every bond length in the table; returns one result per row.
std::vector<VqeResult> vqe_h2(const std::vector<H2Coefficients>& table,
                              const DeviceModel& device,
                              const VqeOptions& options);

/// Hook for plugging a classical optimizer over theta instead of the grid
/// scan; `objective` evaluates E(theta). No optimizer ships: the scan
/// plus sinusoid refinement stands in for it.
using ThetaOptimizer = std::function<double(
    const std::function<double(double)>& objective, double lo, double hi)>;

std::string vqe_results_to_csv(const std::vector<VqeResult>& results);
std::string vqe_results_to_json(const std::vector<VqeResult>& results);

}  // namespace qcp::expt
