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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcp/platform_config.hpp"

namespace qcp {

DeviceModel PlatformConfig::load_device() const {
  if (device_profile_path.empty()) return aspen4_device();
  return load_device_profile(device_profile_path);
}

PlatformConfig PlatformConfig::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("platform config: bad JSON: ") +
                                e.what());
  }
  PlatformConfig config;
  config.device_profile_path = doc.value("device", std::string{});
  config.default_shots = doc.value("default_shots", uint64_t{1000});
  config.default_reset = doc.value("default_reset", "passive") == "active"
                             ? exec::ResetMode::Active
                             : exec::ResetMode::Passive;
  config.output_dir = doc.value("output_dir", std::string{"artifacts"});
  config.bind_address = doc.value("bind_address", std::string{"127.0.0.1"});
  config.port = doc.value("port", 8080);
  return config;
}

PlatformConfig PlatformConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open platform config: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  PlatformConfig config = from_json(buffer.str());
  config.load_device();  // referenced files must exist and parse
  return config;
}

PlatformConfig PlatformConfig::resolve(
    const std::optional<std::string>& cli_path) {
  if (cli_path) return load(*cli_path);
  if (const char* env = std::getenv("QCP_CONFIG")) return load(env);
  return PlatformConfig{};
}

}  // namespace qcp
