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
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcp/expt/vqe.hpp"
#include "qcp/rng.hpp"

namespace qcp::expt {
namespace {

// Least squares of E(theta) = a + b cos(2 theta) + c sin(2 theta).
struct Sinusoid {
  double a = 0.0, b = 0.0, c = 0.0;

  double eval(double theta) const {
    return a + b * std::cos(2 * theta) + c * std::sin(2 * theta);
  }
  double minimum() const { return a - std::hypot(b, c); }
  double argmin() const {
    // 2 theta* = atan2(-c, -b)
    return 0.5 * std::atan2(-c, -b);
  }
};

Sinusoid fit_sinusoid(const std::vector<VqeThetaSample>& scan) {
  // Normal equations for the 3-parameter linear model.
  double s[3][3] = {};
  double t[3] = {};
  for (const auto& sample : scan) {
    double basis[3] = {1.0, std::cos(2 * sample.theta),
                       std::sin(2 * sample.theta)};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) s[i][j] += basis[i] * basis[j];
      t[i] += basis[i] * sample.energy;
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = s[i][j];
    m[i][3] = t[i];
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    std::swap(m[col], m[pivot]);
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      double f = m[row][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return Sinusoid{m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

std::vector<H2Coefficients> parse_h2_coefficients(const std::string& text) {
  std::vector<H2Coefficients> table;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("R_angstrom", 0) != 0) {
        throw std::invalid_argument(
            "coefficient file must start with header "
            "R_angstrom,g0,g1,g2,g3,g4,g5");
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(row, field, ',')) {
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw std::invalid_argument("coefficient file: bad number '" + field +
                                    "'");
      }
    }
    if (values.size() != 7) {
      throw std::invalid_argument(
          "coefficient file: each row needs R and six coefficients");
    }
    H2Coefficients c;
    c.bond_length = values[0];
    for (int i = 0; i < 6; ++i) c.g[i] = values[i + 1];
    table.push_back(c);
  }
  if (table.empty()) {
    throw std::invalid_argument("coefficient file holds no rows");
  }
  return table;
}

std::vector<H2Coefficients> load_h2_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open coefficient file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_h2_coefficients(buffer.str());
}

quil::Program ucc_h2_ansatz() {
  return quil::parse(
      "DECLARE ucc_phase REAL[1]\n"
      "X 1\n"
      "H 0\n"
      "RX(pi/2) 1\n"
      "CNOT 0 1\n"
      "RZ(ucc_phase[0]) 1\n"
      "CNOT 0 1\n"
      "H 0\n"
      "RX(-pi/2) 1");
}

VqeResult vqe_h2_scan(const H2Coefficients& coefficients,
                      const DeviceModel& device, const VqeOptions& options) {
  if (options.theta_points < 3) {
    throw std::invalid_argument("theta grid needs at least three points");
  }

  ExperimentSpec spec;
  spec.program = ucc_h2_ansatz();
  // Three measurement bases; Z0 and Z1 come from the ZZ setting's bits.
  spec.settings.push_back({PauliObservable::parse("Z0*Z1")});
  spec.settings.push_back({PauliObservable::parse("Y0*Y1")});
  spec.settings.push_back({PauliObservable::parse("X0*X1")});
  spec.shots = options.shots;
  spec.estimation = options.estimation;

  ExperimentSession session(spec, device);
  Rng rng(options.seed);

  VqeResult result;
  result.bond_length = coefficients.bond_length;
  const auto& g = coefficients.g;

  for (uint32_t i = 0; i < options.theta_points; ++i) {
    double theta = -kPi / 2 + kPi * static_cast<double>(i) /
                                  (options.theta_points - 1);
    exec::MemoryMap params;
    params.set_real("ucc_phase", 0, 2.0 * theta);
    RunResult run = session.run(params, rng.next_u64());

    const SettingData& zz_data = run.settings[0].data;
    uint64_t derive_seed = rng.split(i).next_u64();
    auto z0 = session.estimate_product(zz_data, PauliObservable::parse("Z0"),
                                       derive_seed);
    auto z1 = session.estimate_product(zz_data, PauliObservable::parse("Z1"),
                                       derive_seed);
    const auto& zz = run.settings[0].estimate;
    const auto& yy = run.settings[1].estimate;
    const auto& xx = run.settings[2].estimate;

    VqeThetaSample sample;
    sample.theta = theta;
    sample.energy = g[0] + g[1] * z0.corrected_mean +
                    g[2] * z1.corrected_mean + g[3] * zz.corrected_mean +
                    g[4] * yy.corrected_mean + g[5] * xx.corrected_mean;
    sample.energy_std_err = std::sqrt(
        g[1] * g[1] * z0.corrected_std_err * z0.corrected_std_err +
        g[2] * g[2] * z1.corrected_std_err * z1.corrected_std_err +
        g[3] * g[3] * zz.corrected_std_err * zz.corrected_std_err +
        g[4] * g[4] * yy.corrected_std_err * yy.corrected_std_err +
        g[5] * g[5] * xx.corrected_std_err * xx.corrected_std_err);
    result.scan.push_back(sample);
  }

  result.grid_min_energy = result.scan[0].energy;
  result.grid_min_theta = result.scan[0].theta;
  for (const auto& sample : result.scan) {
    if (sample.energy < result.grid_min_energy) {
      result.grid_min_energy = sample.energy;
      result.grid_min_theta = sample.theta;
    }
  }
  Sinusoid fit = fit_sinusoid(result.scan);
  result.min_energy = fit.minimum();
  result.min_theta = fit.argmin();
  result.compile_count = session.compile_count();
  return result;
}

std::vector<VqeResult> vqe_h2(const std::vector<H2Coefficients>& table,
                              const DeviceModel& device,
                              const VqeOptions& options) {
  std::vector<VqeResult> results;
  Rng rng(options.seed);
  for (const auto& row : table) {
    VqeOptions per_row = options;
    per_row.seed = rng.next_u64();
    results.push_back(vqe_h2_scan(row, device, per_row));
  }
  return results;
}

std::string vqe_results_to_csv(const std::vector<VqeResult>& results) {
  std::ostringstream out;
  out << "R_angstrom,min_energy_Ha,min_theta,grid_min_energy_Ha,"
         "grid_min_theta\n";
  for (const auto& r : results) {
    out << format_double(r.bond_length) << ',' << format_double(r.min_energy)
        << ',' << format_double(r.min_theta) << ','
        << format_double(r.grid_min_energy) << ','
        << format_double(r.grid_min_theta) << '\n';
  }
  return out.str();
}

std::string vqe_results_to_json(const std::vector<VqeResult>& results) {
  auto arr = nlohmann::json::array();
  for (const auto& r : results) {
    auto scan = nlohmann::json::array();
    for (const auto& sample : r.scan) {
      scan.push_back({{"theta", sample.theta},
                      {"energy_Ha", sample.energy},
                      {"std_err", sample.energy_std_err}});
    }
    arr.push_back({{"R_angstrom", r.bond_length},
                   {"min_energy_Ha", r.min_energy},
                   {"min_theta", r.min_theta},
                   {"grid_min_energy_Ha", r.grid_min_energy},
                   {"compile_count", r.compile_count},
                   {"scan", scan}});
  }
  return arr.dump(2);
}

}  // namespace qcp::expt
