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

#include <memory>
#include <string>

#include "qcp/device.hpp"
#include "qcp/exec/execute.hpp"
#include "qcp/service/registry.hpp"

namespace qcp::service {

struct ServiceConfig {
  DeviceModel device;
  std::string bind_address = "127.0.0.1";
  int port = 0;  // 0: pick a free port
};

/// Canonical JSON bodies shared by the HTTP handlers and the in-process
/// CLI path, so both produce byte-identical artifacts.
std::string compile_response_json(const std::string& id,
                                  const compiler::ParametricBinary& binary);
std::string execution_response_json(const exec::ExecutionReport& report,
                                    const compiler::ParametricBinary& binary,
                                    const exec::MemoryMap& memory);

/// The compile/execute split as a small HTTP+JSON service:
///   POST /compile          {"program": text, "options": {...}}
///   POST /execute          {"id", "memory", "shots", "seed", "reset"}
///   GET  /device
///   GET  /binaries/<id>
/// Stateless apart from the content-addressed registry; identical requests
/// with identical seeds reproduce identical bytes.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and serves on a background thread; returns the bound port.
  int start();
  void stop();
  int port() const;

  BinaryRegistry& registry();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qcp::service
