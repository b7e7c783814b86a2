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

#include <optional>
#include <string>

#include "qcp/device.hpp"
#include "qcp/exec/execute.hpp"

namespace qcp {

/// Platform-level configuration consumed by the CLI and the service.
/// JSON document; the QCP_CONFIG environment variable overrides the path
/// when no --config flag is given.
struct PlatformConfig {
  std::string device_profile_path;  // empty: the built-in aspen4 profile
  uint64_t default_shots = 1000;
  exec::ResetMode default_reset = exec::ResetMode::Passive;
  std::string output_dir = "artifacts";
  std::string bind_address = "127.0.0.1";
  int port = 8080;

  DeviceModel load_device() const;

  static PlatformConfig from_json(const std::string& text);
  static PlatformConfig load(const std::string& path);

  /// --config flag > QCP_CONFIG environment variable > defaults.
  static PlatformConfig resolve(const std::optional<std::string>& cli_path);
};

}  // namespace qcp
