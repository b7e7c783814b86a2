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

#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcp/expt/qaoa.hpp"
#include "qcp/rng.hpp"

namespace qcp::expt {

quil::Program maxcut_ansatz(const EdgeList& edges) {
  if (edges.empty()) {
    throw std::invalid_argument("QAOA needs at least one edge");
  }
  std::set<uint32_t> nodes;
  for (const auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("QAOA graph has a self-loop");
    nodes.insert(a);
    nodes.insert(b);
  }
  std::ostringstream out;
  out << "DECLARE gamma_phase REAL[1]\n";
  out << "DECLARE beta_phase REAL[1]\n";
  for (uint32_t q : nodes) out << "H " << q << '\n';
  for (const auto& [a, b] : edges) {
    out << "CNOT " << a << ' ' << b << '\n';
    out << "RZ(gamma_phase[0]) " << b << '\n';
    out << "CNOT " << a << ' ' << b << '\n';
  }
  for (uint32_t q : nodes) out << "RX(beta_phase[0]) " << q << '\n';
  return quil::parse(out.str());
}

QaoaResult maxcut_qaoa(const EdgeList& edges, const DeviceModel& device,
                       const QaoaOptions& options) {
  if (options.gamma_points < 2) {
    throw std::invalid_argument("gamma sweep needs at least two points");
  }
  ExperimentSpec spec;
  spec.program = maxcut_ansatz(edges);
  for (const auto& [a, b] : edges) {
    PauliObservable observable;
    observable.ops[a] = 'Z';
    observable.ops[b] = 'Z';
    spec.settings.push_back({observable});
  }
  spec.shots = options.shots;
  spec.estimation = options.estimation;

  ExperimentSession session(spec, device);
  Rng rng(options.seed);

  QaoaResult result;
  result.edges = edges;
  result.beta = options.beta;
  for (uint32_t i = 0; i < options.gamma_points; ++i) {
    double gamma = -kPi / 2 + kPi * static_cast<double>(i) /
                                  (options.gamma_points - 1);
    exec::MemoryMap params;
    params.set_real("gamma_phase", 0, 2.0 * gamma);
    params.set_real("beta_phase", 0, 2.0 * options.beta);
    RunResult run = session.run(params, rng.next_u64());
    QaoaPoint point;
    point.gamma = gamma;
    for (const auto& setting : run.settings) {
      point.edge_zz.push_back(setting.estimate);
    }
    result.points.push_back(std::move(point));
  }
  result.compile_count = session.compile_count();
  return result;
}

std::string qaoa_result_to_csv(const QaoaResult& result) {
  std::ostringstream out;
  out << "gamma";
  for (const auto& [a, b] : result.edges) {
    out << ",zz_" << a << '_' << b << ",std_err_" << a << '_' << b;
  }
  out << '\n';
  for (const auto& point : result.points) {
    out << format_double(point.gamma);
    for (const auto& estimate : point.edge_zz) {
      out << ',' << format_double(estimate.corrected_mean) << ','
          << format_double(estimate.corrected_std_err);
    }
    out << '\n';
  }
  return out.str();
}

std::string qaoa_result_to_json(const QaoaResult& result) {
  nlohmann::json j;
  auto edges = nlohmann::json::array();
  for (const auto& [a, b] : result.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["beta"] = result.beta;
  j["compile_count"] = result.compile_count;
  auto points = nlohmann::json::array();
  for (const auto& point : result.points) {
    auto zz = nlohmann::json::array();
    for (const auto& estimate : point.edge_zz) {
      zz.push_back({{"corrected", estimate.corrected_mean},
                    {"std_err", estimate.corrected_std_err},
                    {"symmetrized", estimate.symmetrized_mean},
                    {"lambda", estimate.lambda}});
    }
    points.push_back({{"gamma", point.gamma}, {"zz", zz}});
  }
  j["points"] = points;
  return j.dump(2);
}

}  // namespace qcp::expt
