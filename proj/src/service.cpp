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

#include <atomic>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "qcp/compiler/compile.hpp"
#include "qcp/quil/ast.hpp"
#include "qcp/service/service.hpp"

namespace qcp::service {
namespace {

using nlohmann::json;

json error_body(const std::string& kind, const std::string& message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

json layout_json(const compiler::DataMemoryLayout& layout) {
  auto regions = json::array();
  for (const auto& region : layout.regions) {
    regions.push_back({{"name", region.name},
                       {"kind", quil::to_string(region.kind)},
                       {"length", region.length},
                       {"byte_offset", region.byte_offset}});
  }
  return json{{"regions", regions}, {"total_bytes", layout.total_bytes}};
}

}  // namespace

std::string compile_response_json(const std::string& id,
                                  const compiler::ParametricBinary& binary) {
  json body;
  body["id"] = id;
  body["data_layout"] = layout_json(binary.layout);
  return body.dump();
}

std::string execution_response_json(const exec::ExecutionReport& report,
                                    const compiler::ParametricBinary& binary,
                                    const exec::MemoryMap& memory) {
  json body;
  auto bitstrings = json::array();
  for (const auto& shot : report.shots) {
    bitstrings.push_back(exec::bits_to_string(shot.bits));
  }
  body["bitstrings"] = bitstrings;
  auto readout = json::array();
  for (const auto& entry : binary.readout) {
    readout.push_back(entry.region + "[" + std::to_string(entry.index) + "]");
  }
  body["readout_order"] = readout;
  // The canonical body is bit-reproducible for a fixed seed; wall-clock
  // time travels out-of-band (the service reports it as a header).
  body["timing"] = {
      {"shots", report.shots.size()},
      {"simulated_total_s", report.simulated_total_s},
      {"step_overhead_s", report.step_overhead_s},
      {"per_shot_s",
       report.shots.empty() ? 0.0 : report.shots[0].simulated_duration}};
  // Declared regions that received no assignment executed with their
  // default (zero) image.
  auto defaulted = json::array();
  for (const auto& region : binary.layout.regions) {
    if (!memory.has_region(region.name)) defaulted.push_back(region.name);
  }
  body["defaulted_regions"] = defaulted;
  return body.dump();
}

struct Service::Impl {
  ServiceConfig config;
  BinaryRegistry registry;
  httplib::Server server;
  std::thread thread;
  int bound_port = 0;
  std::atomic<bool> running{false};

  explicit Impl(ServiceConfig cfg) : config(std::move(cfg)) {
    server.Post("/compile", [this](const httplib::Request& req,
                                   httplib::Response& res) {
      handle_compile(req, res);
    });
    server.Post("/execute", [this](const httplib::Request& req,
                                   httplib::Response& res) {
      handle_execute(req, res);
    });
    server.Get("/device", [this](const httplib::Request&,
                                 httplib::Response& res) {
      res.set_content(device_to_json(config.device), "application/json");
    });
    server.Get("/binaries/([0-9a-f]+)", [this](const httplib::Request& req,
                                               httplib::Response& res) {
      auto bytes = registry.lookup_bytes(req.matches[1]);
      if (!bytes) {
        res.status = 404;
        res.set_content(error_body("not_found", "unknown binary id").dump(),
                        "application/json");
        return;
      }
      res.set_content(std::string(bytes->begin(), bytes->end()),
                      "application/octet-stream");
    });
  }

  void handle_compile(const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception& e) {
      res.status = 400;
      res.set_content(error_body("bad_request", e.what()).dump(),
                      "application/json");
      return;
    }
    try {
      if (!body.contains("program")) {
        throw std::invalid_argument("missing 'program' field");
      }
      compiler::CompileOptions options;
      if (body.contains("options") && body["options"].contains("reset_rounds")) {
        options.reset_rounds = body["options"]["reset_rounds"].get<uint32_t>();
      }
      quil::Program program = quil::parse(body["program"].get<std::string>());
      compiler::ParametricBinary binary =
          compiler::compile(program, config.device, options);
      std::string id = registry.store(binary);
      res.set_content(compile_response_json(id, binary), "application/json");
    } catch (const ParseError& e) {
      res.status = 422;
      res.set_content(error_body("parse", e.what()).dump(), "application/json");
    } catch (const CompileError& e) {
      res.status = 422;
      res.set_content(error_body("compile", e.what()).dump(),
                      "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(error_body("bad_request", e.what()).dump(),
                      "application/json");
    }
  }

  void handle_execute(const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception& e) {
      res.status = 400;
      res.set_content(error_body("bad_request", e.what()).dump(),
                      "application/json");
      return;
    }
    try {
      if (!body.contains("id")) {
        throw std::invalid_argument("missing 'id' field");
      }
      auto binary = registry.lookup(body["id"].get<std::string>());
      if (!binary) {
        res.status = 404;
        res.set_content(error_body("not_found", "unknown binary id").dump(),
                        "application/json");
        return;
      }
      exec::MemoryMap memory;
      if (body.contains("memory")) {
        memory = exec::MemoryMap::from_json(body["memory"].dump(),
                                            binary->layout);
      }
      exec::ExecOptions options;
      options.shots = body.value("shots", uint64_t{1});
      options.seed = body.value("seed", uint64_t{0});
      options.reset_mode = body.value("reset", "passive") == "active"
                               ? exec::ResetMode::Active
                               : exec::ResetMode::Passive;
      exec::PatchedBinary patched = exec::patch(*binary, memory);
      exec::ExecutionReport report =
          exec::execute(patched, config.device, options);
      res.set_header("X-QCP-Wall-Clock-S", std::to_string(report.wall_clock_s));
      res.set_content(execution_response_json(report, *binary, memory),
                      "application/json");
    } catch (const ExecutionError& e) {
      res.status = 400;
      res.set_content(error_body("execution", e.what()).dump(),
                      "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(error_body("bad_request", e.what()).dump(),
                      "application/json");
    }
  }
};

Service::Service(ServiceConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

Service::~Service() { stop(); }

int Service::start() {
  if (impl_->running.exchange(true)) return impl_->bound_port;
  if (impl_->config.port == 0) {
    impl_->bound_port =
        impl_->server.bind_to_any_port(impl_->config.bind_address);
  } else {
    if (!impl_->server.bind_to_port(impl_->config.bind_address,
                                    impl_->config.port)) {
      impl_->running = false;
      throw std::runtime_error("cannot bind to port " +
                               std::to_string(impl_->config.port));
    }
    impl_->bound_port = impl_->config.port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->bound_port;
}

void Service::stop() {
  if (!impl_->running.exchange(false)) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int Service::port() const { return impl_->bound_port; }

BinaryRegistry& Service::registry() { return impl_->registry; }

}  // namespace qcp::service
