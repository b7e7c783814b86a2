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
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qcp/common.hpp"
#include "qcp/device.hpp"

namespace qcp {
namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct ProfileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_double(const std::string& value, const std::string& key) {
  try {
    size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ProfileError("device profile: bad numeric value for '" + key + "'");
  }
}

}  // namespace

bool DeviceModel::has_edge(uint32_t a, uint32_t b) const {
  for (const auto& [u, v] : topology) {
    if ((u == a && v == b) || (u == b && v == a)) return true;
  }
  return false;
}

double DeviceModel::passive_reset_duration(
    const std::vector<uint32_t>& qubits) const {
  double longest = 0.0;
  for (uint32_t q : qubits) longest = std::max(longest, t1.at(q));
  return 5.0 * longest;
}

void DeviceModel::validate() const {
  if (qubit_count == 0) throw ProfileError("device has no qubits");
  for (const auto& [a, b] : topology) {
    if (a >= qubit_count || b >= qubit_count) {
      throw ProfileError("topology edge references an invalid qubit");
    }
    if (a == b) throw ProfileError("topology contains a self-loop");
  }
  auto check_size = [&](size_t n, const char* what) {
    if (n != qubit_count) {
      throw ProfileError(std::string("per-qubit table '") + what +
                         "' does not cover every qubit");
    }
  };
  check_size(t1.size(), "t1");
  check_size(readout_confusion.size(), "readout_confusion");
  check_size(reset_ground_population.size(), "reset_ground_population");
  for (double v : t1) {
    if (v <= 0) throw ProfileError("t1 must be positive");
  }
  for (const auto& rc : readout_confusion) {
    if (rc.epsilon0 < 0 || rc.epsilon0 > 1 || rc.epsilon1 < 0 ||
        rc.epsilon1 > 1) {
      throw ProfileError("confusion rates must lie in [0, 1]");
    }
  }
  for (double p : reset_ground_population) {
    if (p < 0 || p > 1) {
      throw ProfileError("reset_ground_population must lie in [0, 1]");
    }
  }
  if (durations.rx_pulse < 0 || durations.cz < 0 ||
      durations.readout_capture < 0 || durations.feedback_latency < 0) {
    throw ProfileError("durations must be non-negative");
  }
  if (log2_quantum_volume < 1) {
    throw ProfileError("log2_quantum_volume must be positive");
  }
}

DeviceModel parse_device_profile(const std::string& text) {
  DeviceModel device;
  std::string section;
  // Defaults applied to every qubit unless a [qubit.N] section overrides.
  double default_t1 = 20e-6;
  ReadoutConfusion default_confusion;
  double default_ground = 1.0;
  struct Override {
    uint32_t qubit;
    std::string key;
    double value;
  };
  std::vector<Override> overrides;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ProfileError("device profile: expected 'key = value': " + line);
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (section == "device") {
      if (key == "name") {
        device.name = value;
      } else if (key == "qubit_count") {
        device.qubit_count = static_cast<uint32_t>(to_double(value, key));
      } else if (key == "log2_quantum_volume") {
        device.log2_quantum_volume = static_cast<uint32_t>(to_double(value, key));
      } else {
        throw ProfileError("device profile: unknown key '" + key + "'");
      }
    } else if (section == "topology") {
      if (key != "edges") {
        throw ProfileError("device profile: unknown key '" + key + "'");
      }
      std::istringstream edges(value);
      std::string pair;
      while (edges >> pair) {
        size_t dash = pair.find('-');
        if (dash == std::string::npos) {
          throw ProfileError("device profile: edge must look like '0-1'");
        }
        uint32_t a = static_cast<uint32_t>(
            to_double(pair.substr(0, dash), "edge"));
        uint32_t b =
            static_cast<uint32_t>(to_double(pair.substr(dash + 1), "edge"));
        device.topology.emplace_back(a, b);
      }
    } else if (section == "durations") {
      double v = to_double(value, key);
      if (key == "rx_pulse") {
        device.durations.rx_pulse = v;
      } else if (key == "cz") {
        device.durations.cz = v;
      } else if (key == "readout_capture") {
        device.durations.readout_capture = v;
      } else if (key == "feedback_latency") {
        device.durations.feedback_latency = v;
      } else {
        throw ProfileError("device profile: unknown duration '" + key + "'");
      }
    } else if (section == "step_overheads") {
      double v = to_double(value, key);
      if (key == "compile") {
        device.step_overheads.compile = v;
      } else if (key == "awg_load_arm") {
        device.step_overheads.awg_load_arm = v;
      } else if (key == "awg_trigger") {
        device.step_overheads.awg_trigger = v;
      } else if (key == "network") {
        device.step_overheads.network = v;
      } else {
        throw ProfileError("device profile: unknown overhead '" + key + "'");
      }
    } else if (section == "defaults") {
      double v = to_double(value, key);
      if (key == "t1") {
        default_t1 = v;
      } else if (key == "epsilon0") {
        default_confusion.epsilon0 = v;
      } else if (key == "epsilon1") {
        default_confusion.epsilon1 = v;
      } else if (key == "reset_ground_population") {
        default_ground = v;
      } else {
        throw ProfileError("device profile: unknown default '" + key + "'");
      }
    } else if (section.rfind("qubit.", 0) == 0) {
      uint32_t q =
          static_cast<uint32_t>(to_double(section.substr(6), "qubit section"));
      overrides.push_back({q, key, to_double(value, key)});
    } else {
      throw ProfileError("device profile: unknown section '" + section + "'");
    }
  }

  device.t1.assign(device.qubit_count, default_t1);
  device.readout_confusion.assign(device.qubit_count, default_confusion);
  device.reset_ground_population.assign(device.qubit_count, default_ground);
  for (const auto& o : overrides) {
    if (o.qubit >= device.qubit_count) {
      throw ProfileError("device profile: override for unknown qubit");
    }
    if (o.key == "t1") {
      device.t1[o.qubit] = o.value;
    } else if (o.key == "epsilon0") {
      device.readout_confusion[o.qubit].epsilon0 = o.value;
    } else if (o.key == "epsilon1") {
      device.readout_confusion[o.qubit].epsilon1 = o.value;
    } else if (o.key == "reset_ground_population") {
      device.reset_ground_population[o.qubit] = o.value;
    } else {
      throw ProfileError("device profile: unknown per-qubit key '" + o.key +
                         "'");
    }
  }

  device.validate();
  return device;
}

DeviceModel load_device_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProfileError("cannot open device profile: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_device_profile(buffer.str());
}

const std::string& aspen4_profile_text() {
  static const std::string text = R"(# aspen4-like device profile
# Two octagonal rings with two inter-ring couplers. Timing values follow
# the published per-step and per-shot budgets for this class of hardware.

[device]
name = aspen4-like
qubit_count = 16
log2_quantum_volume = 3

[topology]
edges = 0-1 1-2 2-3 3-4 4-5 5-6 6-7 7-0 8-9 9-10 10-11 11-12 12-13 13-14 14-15 15-8 1-14 2-13

[durations]
rx_pulse = 60e-9
cz = 300e-9
readout_capture = 2e-6
feedback_latency = 1e-6

[step_overheads]
compile = 200e-3
awg_load_arm = 8e-3
awg_trigger = 10e-3
network = 5e-3

[defaults]
t1 = 20e-6
epsilon0 = 0.02
epsilon1 = 0.05
reset_ground_population = 1.0
)";
  return text;
}

DeviceModel aspen4_device() {
  static const DeviceModel device = parse_device_profile(aspen4_profile_text());
  return device;
}

std::string device_to_json(const DeviceModel& device) {
  nlohmann::json j;
  j["name"] = device.name;
  j["qubit_count"] = device.qubit_count;
  auto edges = nlohmann::json::array();
  for (const auto& [a, b] : device.topology) {
    edges.push_back({a, b});
  }
  j["topology"] = edges;
  j["durations"] = {{"rx_pulse", device.durations.rx_pulse},
                    {"cz", device.durations.cz},
                    {"readout_capture", device.durations.readout_capture},
                    {"feedback_latency", device.durations.feedback_latency}};
  j["step_overheads"] = {{"compile", device.step_overheads.compile},
                         {"awg_load_arm", device.step_overheads.awg_load_arm},
                         {"awg_trigger", device.step_overheads.awg_trigger},
                         {"network", device.step_overheads.network}};
  j["t1"] = device.t1;
  auto confusion = nlohmann::json::array();
  for (const auto& rc : device.readout_confusion) {
    confusion.push_back({{"epsilon0", rc.epsilon0}, {"epsilon1", rc.epsilon1}});
  }
  j["readout_confusion"] = confusion;
  j["reset_ground_population"] = device.reset_ground_population;
  j["log2_quantum_volume"] = device.log2_quantum_volume;
  return j.dump(2);
}

}  // namespace qcp
