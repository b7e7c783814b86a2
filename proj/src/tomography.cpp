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

#include <cmath>

#include "qcp/expt/tomography.hpp"

namespace qcp::expt {
namespace {

using PauliMat = std::array<std::array<cdouble, 2>, 2>;

PauliMat pauli_1q(char p) {
  const cdouble i{0.0, 1.0};
  switch (p) {
    case 'I':
      return {{{1.0, 0.0}, {0.0, 1.0}}};
    case 'X':
      return {{{0.0, 1.0}, {1.0, 0.0}}};
    case 'Y':
      return {{{0.0, -i}, {i, 0.0}}};
    default:
      return {{{1.0, 0.0}, {0.0, -1.0}}};
  }
}

/// P = p0 on qubit 0 (low index bit) and p1 on qubit 1.
DensityMatrix pauli_4x4(char p0, char p1) {
  PauliMat a = pauli_1q(p0);
  PauliMat b = pauli_1q(p1);
  DensityMatrix m{};
  for (int r1 = 0; r1 < 2; ++r1) {
    for (int r0 = 0; r0 < 2; ++r0) {
      for (int c1 = 0; c1 < 2; ++c1) {
        for (int c0 = 0; c0 < 2; ++c0) {
          m[r1 * 2 + r0][c1 * 2 + c0] = b[r1][c1] * a[r0][c0];
        }
      }
    }
  }
  return m;
}

}  // namespace

const std::array<std::string, 15>& two_qubit_pauli_labels() {
  static const std::array<std::string, 15> labels = {
      "XI", "YI", "ZI", "IX", "IY", "IZ", "XX", "XY",
      "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"};
  return labels;
}

DensityMatrix linear_inversion(
    const std::map<std::string, double>& expectations) {
  for (const auto& label : two_qubit_pauli_labels()) {
    if (expectations.find(label) == expectations.end()) {
      throw std::invalid_argument("linear inversion: missing setting " + label);
    }
  }
  DensityMatrix rho{};
  const char paulis[4] = {'I', 'X', 'Y', 'Z'};
  for (char p0 : paulis) {
    for (char p1 : paulis) {
      std::string label{p0, p1};
      double expectation =
          (label == "II") ? 1.0 : expectations.at(label);
      DensityMatrix p = pauli_4x4(p0, p1);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          rho[r][c] += 0.25 * expectation * p[r][c];
        }
      }
    }
  }
  return rho;
}

double fidelity_to_pure(const DensityMatrix& rho,
                        const std::array<cdouble, 4>& psi) {
  cdouble value{0.0, 0.0};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      value += std::conj(psi[r]) * rho[r][c] * psi[c];
    }
  }
  return value.real();
}

std::array<cdouble, 4> bell_phi_plus_state() {
  double s = 1.0 / std::sqrt(2.0);
  return {cdouble{s, 0.0}, cdouble{0.0, 0.0}, cdouble{0.0, 0.0},
          cdouble{s, 0.0}};
}

DensityMatrix pure_density(const std::array<cdouble, 4>& psi) {
  DensityMatrix rho{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      rho[r][c] = psi[r] * std::conj(psi[c]);
    }
  }
  return rho;
}

double pauli_expectation(const DensityMatrix& rho, const std::string& label) {
  DensityMatrix p = pauli_4x4(label.at(0), label.at(1));
  cdouble trace{0.0, 0.0};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      trace += rho[r][c] * p[c][r];
    }
  }
  return trace.real();
}

TomographyResult bell_tomography(const DeviceModel& device, uint64_t shots,
                                 Estimation estimation, uint64_t seed) {
  ExperimentSpec spec;
  spec.program = quil::parse("H 0\nCNOT 0 1");
  for (const auto& label : two_qubit_pauli_labels()) {
    PauliObservable observable;
    if (label[0] != 'I') observable.ops[0] = label[0];
    if (label[1] != 'I') observable.ops[1] = label[1];
    spec.settings.push_back({observable});
  }
  spec.shots = shots;
  spec.estimation = estimation;
  spec.symmetrization = Symmetrization::Exhaustive;
  spec.calibration = Calibration::PlusEigenstate;

  ExperimentSession session(spec, device);
  RunResult run = session.run(exec::MemoryMap{}, seed);

  TomographyResult result;
  std::map<std::string, double> expectations;
  for (size_t i = 0; i < two_qubit_pauli_labels().size(); ++i) {
    expectations[two_qubit_pauli_labels()[i]] =
        run.settings[i].estimate.corrected_mean;
    result.estimates.push_back(run.settings[i].estimate);
  }
  result.rho = linear_inversion(expectations);
  result.fidelity = fidelity_to_pure(result.rho, bell_phi_plus_state());
  result.compile_count = session.compile_count();
  return result;
}

}  // namespace qcp::expt
