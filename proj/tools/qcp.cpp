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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcp/bench/latency.hpp"
#include "qcp/compiler/compile.hpp"
#include "qcp/exec/execute.hpp"
#include "qcp/expt/qaoa.hpp"
#include "qcp/expt/tomography.hpp"
#include "qcp/expt/vqe.hpp"
#include "qcp/platform_config.hpp"
#include "qcp/service/service.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitCompile = 2;
constexpr int kExitExecution = 3;

void emit_error(const std::string& kind, const std::string& message) {
  json body{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << body.dump() << std::endl;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

std::string timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", std::localtime(&t));
  return buf;
}

std::string artifact_path(const qcp::PlatformConfig& config,
                          const std::string& stem, const std::string& ext) {
  std::filesystem::create_directories(config.output_dir);
  return (std::filesystem::path(config.output_dir) /
          (stem + "_" + timestamp() + ext))
      .string();
}

qcp::expt::EdgeList parse_edges(const std::string& text) {
  qcp::expt::EdgeList edges;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    size_t dash = token.find('-');
    if (dash == std::string::npos) {
      throw std::invalid_argument("edge must look like 0-1: " + token);
    }
    edges.emplace_back(std::stoul(token.substr(0, dash)),
                       std::stoul(token.substr(dash + 1)));
  }
  return edges;
}

struct CommonOptions {
  std::optional<std::string> config_path;
  uint64_t seed = 0;
};

int run_compile(const qcp::PlatformConfig& config, const std::string& input,
                const std::string& output, uint32_t reset_rounds,
                const std::string& json_dump) {
  auto device = config.load_device();
  qcp::quil::Program program = qcp::quil::parse(read_file(input));
  qcp::compiler::ParametricBinary binary =
      qcp::compiler::compile(program, device, {reset_rounds});
  auto bytes = binary.serialize();
  write_file(output, std::string(bytes.begin(), bytes.end()));
  if (!json_dump.empty()) write_file(json_dump, binary.to_json());
  std::cout << "wrote " << output << " (" << bytes.size() << " bytes, "
            << binary.blocks.size() << " blocks, "
            << binary.layout.total_bytes << " data bytes)" << std::endl;
  return 0;
}

int run_run(const qcp::PlatformConfig& config, const std::string& binary_path,
            const std::string& memory_path, uint64_t shots, uint64_t seed,
            const std::string& reset, const std::string& output) {
  auto device = config.load_device();
  std::string raw = read_file(binary_path);
  auto binary = qcp::compiler::ParametricBinary::deserialize(
      std::vector<uint8_t>(raw.begin(), raw.end()));
  qcp::exec::MemoryMap memory;
  if (!memory_path.empty()) {
    memory = qcp::exec::MemoryMap::from_json(read_file(memory_path),
                                             binary.layout);
  }
  qcp::exec::ExecOptions options;
  options.shots = shots;
  options.seed = seed;
  options.reset_mode = reset == "active" ? qcp::exec::ResetMode::Active
                                         : qcp::exec::ResetMode::Passive;
  auto patched = qcp::exec::patch(binary, memory);
  auto report = qcp::exec::execute(patched, device, options);
  std::string body =
      qcp::service::execution_response_json(report, binary, memory);
  if (output.empty()) {
    std::cout << body << std::endl;
  } else {
    write_file(output, body);
    std::cout << "wrote " << output << std::endl;
  }
  return 0;
}

int run_bench(const qcp::PlatformConfig& config, uint32_t m,
              const std::string& sweep, const std::string& mode,
              bool no_parametric, bool active_reset, uint32_t repetitions,
              uint32_t sets, uint64_t seed, bool panel) {
  auto device = config.load_device();
  qcp::bench::BenchConfig bench = qcp::bench::computationally_relevant_config(device);
  if (m != 0) bench.m = m;
  if (sweep != "default") {
    bench.shots_list.clear();
    std::istringstream in(sweep);
    std::string token;
    while (std::getline(in, token, ',')) {
      bench.shots_list.push_back(std::stoull(token));
    }
  }
  bench.mode = mode == "wall" ? qcp::bench::ClockMode::WallClock
                              : qcp::bench::ClockMode::Simulated;
  bench.parametric = !no_parametric;
  bench.active_reset = active_reset;
  bench.repetitions = repetitions;
  bench.permutation_sets = sets;
  bench.seed = seed;

  if (panel) {
    // The log-log panel as data: one column of medians per configuration.
    struct Panel {
      const char* label;
      bool parametric;
      bool active;
    };
    const Panel panels[] = {{"baseline", false, false},
                            {"baseline+reset", false, true},
                            {"parametric", true, false},
                            {"parametric+reset", true, true}};
    std::vector<std::vector<qcp::bench::LatencySample>> columns;
    std::cout << "log-log latency panel (seconds, medians of "
              << bench.repetitions << " runs x " << bench.permutation_sets
              << " permutation sets, RPG(" << bench.m << "))\n";
    std::cout << "n";
    for (const auto& p : panels) std::cout << '\t' << p.label;
    std::cout << '\n';
    for (const auto& p : panels) {
      qcp::bench::BenchConfig c = bench;
      c.parametric = p.parametric;
      c.active_reset = p.active;
      columns.push_back(qcp::bench::measure_latency(device, c));
    }
    for (size_t row = 0; row < columns[0].size(); ++row) {
      std::cout << columns[0][row].n;
      for (const auto& column : columns) {
        std::cout << '\t' << qcp::format_double(column[row].total_s);
      }
      std::cout << '\n';
    }
    for (size_t i = 0; i < 4; ++i) {
      auto fit = qcp::bench::fit_latency(columns[i]);
      std::cout << panels[i].label << ": T_V = " << qcp::format_double(fit.t_v_s)
                << " s, T_Q = " << qcp::format_double(fit.t_q_s) << " s";
      if (fit.n_c) std::cout << ", n_c = " << qcp::format_double(*fit.n_c);
      std::cout << '\n';
    }
    return 0;
  }

  auto samples = qcp::bench::measure_latency(device, bench);
  auto fit = qcp::bench::fit_latency(samples);
  std::string csv_path = artifact_path(config, "bench_rpg", ".csv");
  std::string json_path = artifact_path(config, "bench_rpg", ".json");
  write_file(csv_path, qcp::bench::samples_to_csv(samples, fit));
  write_file(json_path, qcp::bench::fit_to_json(bench, samples, fit));
  std::cout << "T_V = " << qcp::format_double(fit.t_v_s)
            << " s, T_Q = " << qcp::format_double(fit.t_q_s) << " s";
  if (fit.n_c) std::cout << ", n_c = " << qcp::format_double(*fit.n_c);
  std::cout << "\nwrote " << csv_path << "\nwrote " << json_path << std::endl;
  return 0;
}

int run_experiment_cmd(const qcp::PlatformConfig& config,
                       const std::string& spec_path, uint64_t seed) {
  auto device = config.load_device();
  auto spec = qcp::expt::experiment_spec_from_json(read_file(spec_path));
  auto estimates = qcp::expt::run_experiment(spec, device, seed);
  std::string csv_path = artifact_path(config, "experiment", ".csv");
  std::string json_path = artifact_path(config, "experiment", ".json");
  write_file(csv_path, qcp::expt::estimates_to_csv(estimates));
  write_file(json_path, qcp::expt::estimates_to_json(estimates));
  std::cout << qcp::expt::estimates_to_csv(estimates);
  std::cout << "wrote " << csv_path << "\nwrote " << json_path << std::endl;
  return 0;
}

int run_tomography(const qcp::PlatformConfig& config, uint64_t shots,
                   uint64_t seed, bool noiseless) {
  auto device = config.load_device();
  auto result = qcp::expt::bell_tomography(
      device, shots,
      noiseless ? qcp::expt::Estimation::Exact : qcp::expt::Estimation::Sampled,
      seed);
  json body;
  body["fidelity"] = result.fidelity;
  body["compile_count"] = result.compile_count;
  auto rho = json::array();
  for (int r = 0; r < 4; ++r) {
    auto row = json::array();
    for (int c = 0; c < 4; ++c) {
      row.push_back({result.rho[r][c].real(), result.rho[r][c].imag()});
    }
    rho.push_back(row);
  }
  body["rho"] = rho;
  std::string path = artifact_path(config, "tomography_bell", ".json");
  write_file(path, body.dump(2));
  std::cout << "Bell state fidelity: " << qcp::format_double(result.fidelity)
            << "\nwrote " << path << std::endl;
  return 0;
}

int run_vqe(const qcp::PlatformConfig& config, const std::string& coeffs,
            uint32_t thetas, uint64_t shots, uint64_t seed, bool noiseless) {
  auto device = config.load_device();
  auto table = qcp::expt::load_h2_coefficients(coeffs);
  qcp::expt::VqeOptions options;
  options.theta_points = thetas;
  options.shots = shots;
  options.seed = seed;
  options.estimation = noiseless ? qcp::expt::Estimation::Exact
                                 : qcp::expt::Estimation::Sampled;
  auto results = qcp::expt::vqe_h2(table, device, options);
  std::string csv_path = artifact_path(config, "vqe_h2", ".csv");
  std::string json_path = artifact_path(config, "vqe_h2", ".json");
  write_file(csv_path, qcp::expt::vqe_results_to_csv(results));
  write_file(json_path, qcp::expt::vqe_results_to_json(results));
  std::cout << qcp::expt::vqe_results_to_csv(results);
  std::cout << "wrote " << csv_path << "\nwrote " << json_path << std::endl;
  return 0;
}

int run_qaoa(const qcp::PlatformConfig& config, const std::string& edges_text,
             double beta, uint32_t points, uint64_t shots, uint64_t seed,
             bool noiseless) {
  auto device = config.load_device();
  qcp::expt::QaoaOptions options;
  options.beta = beta;
  options.gamma_points = points;
  options.shots = shots;
  options.seed = seed;
  options.estimation = noiseless ? qcp::expt::Estimation::Exact
                                 : qcp::expt::Estimation::Sampled;
  auto result = qcp::expt::maxcut_qaoa(parse_edges(edges_text), device, options);
  std::string csv_path = artifact_path(config, "qaoa_maxcut", ".csv");
  std::string json_path = artifact_path(config, "qaoa_maxcut", ".json");
  write_file(csv_path, qcp::expt::qaoa_result_to_csv(result));
  write_file(json_path, qcp::expt::qaoa_result_to_json(result));
  std::cout << "swept " << result.points.size() << " gamma values over "
            << result.edges.size() << " edge(s); compile count "
            << result.compile_count << "\nwrote " << csv_path << "\nwrote "
            << json_path << std::endl;
  return 0;
}

int run_serve(const qcp::PlatformConfig& config, int port) {
  qcp::service::ServiceConfig service_config;
  service_config.device = config.load_device();
  service_config.bind_address = config.bind_address;
  service_config.port = port != 0 ? port : config.port;
  qcp::service::Service service(std::move(service_config));
  int bound = service.start();
  std::cout << "serving on " << config.bind_address << ":" << bound
            << " (device " << config.load_device().name << ")" << std::endl;
  for (;;) std::this_thread::sleep_for(std::chrono::seconds(3600));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale quantum-classical platform simulator"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--config", common.config_path,
                 "platform config JSON (or set QCP_CONFIG)");

  // compile
  std::string in_path, out_path = "out.pqb", json_dump;
  uint32_t reset_rounds = 3;
  auto* compile_cmd =
      app.add_subcommand("compile", "compile a .quil program to a .pqb binary");
  compile_cmd->add_option("input", in_path, ".quil source")->required();
  compile_cmd->add_option("-o,--output", out_path, "output binary path");
  compile_cmd->add_option("--reset-rounds", reset_rounds,
                          "active reset rounds (with RESET)");
  compile_cmd->add_option("--json-dump", json_dump,
                          "write a JSON dump of all sections");

  // run
  std::string run_binary, memory_path, reset_mode = "passive", run_output;
  uint64_t shots = 0, seed = 0;
  auto* run_cmd = app.add_subcommand("run", "execute a .pqb binary");
  run_cmd->add_option("binary", run_binary, ".pqb binary")->required();
  run_cmd->add_option("--memory", memory_path, "memory map JSON file");
  run_cmd->add_option("--shots", shots, "number of shots");
  run_cmd->add_option("--seed", seed, "RNG seed");
  run_cmd->add_option("--reset", reset_mode, "passive|active");
  run_cmd->add_option("-o,--output", run_output, "write the report here");

  // bench rpg
  auto* bench_cmd = app.add_subcommand("bench", "latency benchmarks");
  bench_cmd->require_subcommand(1);
  uint32_t bench_m = 0, bench_r = 100, bench_sets = 5;
  std::string bench_sweep = "default", bench_mode = "simulated";
  bool bench_no_parametric = false, bench_active = false, bench_panel = false;
  uint64_t bench_seed = 0;
  auto* bench_rpg =
      bench_cmd->add_subcommand("rpg", "random-phase-gadget volumetric sweep");
  bench_rpg->add_option("--m", bench_m, "qubits (default: log2 V_Q)");
  bench_rpg->add_option("--sweep", bench_sweep,
                        "'default' or comma-separated shot counts");
  bench_rpg->add_option("--mode", bench_mode, "simulated|wall");
  bench_rpg->add_flag("--no-parametric", bench_no_parametric,
                      "recompile every iteration step");
  bench_rpg->add_flag("--active-reset", bench_active, "enable active reset");
  bench_rpg->add_option("--r", bench_r, "runs per shot count");
  bench_rpg->add_option("--sets", bench_sets, "permutation sets");
  bench_rpg->add_option("--seed", bench_seed, "RNG seed");
  bench_rpg->add_flag("--panel", bench_panel,
                      "print all four configurations as a table");

  // experiment run
  auto* expt_cmd = app.add_subcommand("experiment", "experiment framework");
  expt_cmd->require_subcommand(1);
  std::string spec_path;
  uint64_t expt_seed = 0;
  auto* expt_run = expt_cmd->add_subcommand("run", "run an experiment spec");
  expt_run->add_option("spec", spec_path, "experiment spec JSON")->required();
  expt_run->add_option("--seed", expt_seed, "RNG seed");

  // tomography bell
  auto* tomo_cmd = app.add_subcommand("tomography", "state tomography");
  tomo_cmd->require_subcommand(1);
  uint64_t tomo_shots = 10000, tomo_seed = 0;
  bool tomo_noiseless = false;
  auto* tomo_bell = tomo_cmd->add_subcommand("bell", "Bell state tomography");
  tomo_bell->add_option("--shots", tomo_shots, "shots per setting");
  tomo_bell->add_option("--seed", tomo_seed, "RNG seed");
  tomo_bell->add_flag("--noiseless", tomo_noiseless, "exact expectations");

  // vqe h2
  auto* vqe_cmd = app.add_subcommand("vqe", "variational quantum eigensolver");
  vqe_cmd->require_subcommand(1);
  std::string coeffs_path;
  uint32_t vqe_thetas = 250;
  uint64_t vqe_shots = 10000, vqe_seed = 0;
  bool vqe_noiseless = false;
  auto* vqe_h2_cmd = vqe_cmd->add_subcommand("h2", "H2 ground state scan");
  vqe_h2_cmd->add_option("--coeffs", coeffs_path, "Hamiltonian CSV")->required();
  vqe_h2_cmd->add_option("--thetas", vqe_thetas, "theta grid points");
  vqe_h2_cmd->add_option("--shots", vqe_shots, "shots per setting");
  vqe_h2_cmd->add_option("--seed", vqe_seed, "RNG seed");
  vqe_h2_cmd->add_flag("--noiseless", vqe_noiseless, "exact expectations");

  // qaoa maxcut
  auto* qaoa_cmd = app.add_subcommand("qaoa", "QAOA drivers");
  qaoa_cmd->require_subcommand(1);
  std::string edges_text = "0-1";
  double qaoa_beta = qcp::kPi / 8;
  uint32_t qaoa_points = 100;
  uint64_t qaoa_shots = 10000, qaoa_seed = 0;
  bool qaoa_noiseless = false;
  auto* qaoa_maxcut_cmd =
      qaoa_cmd->add_subcommand("maxcut", "Max-Cut gamma sweep, fixed beta");
  qaoa_maxcut_cmd->add_option("--edges", edges_text, "e.g. 0-1,1-2");
  qaoa_maxcut_cmd->add_option("--beta", qaoa_beta, "mixer angle (radians)");
  qaoa_maxcut_cmd->add_option("--points", qaoa_points, "gamma grid points");
  qaoa_maxcut_cmd->add_option("--shots", qaoa_shots, "shots per point");
  qaoa_maxcut_cmd->add_option("--seed", qaoa_seed, "RNG seed");
  qaoa_maxcut_cmd->add_flag("--noiseless", qaoa_noiseless, "exact expectations");

  // device show
  auto* device_cmd = app.add_subcommand("device", "device model");
  device_cmd->require_subcommand(1);
  device_cmd->add_subcommand("show", "print the device model as JSON");

  // serve
  int serve_port = 0;
  auto* serve_cmd = app.add_subcommand("serve", "run the compile/execute service");
  serve_cmd->add_option("--port", serve_port, "override the configured port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return kExitUsage;
  }

  try {
    qcp::PlatformConfig config = qcp::PlatformConfig::resolve(common.config_path);
    if (shots == 0) shots = config.default_shots;

    if (compile_cmd->parsed()) {
      return run_compile(config, in_path, out_path, reset_rounds, json_dump);
    }
    if (run_cmd->parsed()) {
      return run_run(config, run_binary, memory_path, shots, seed, reset_mode,
                     run_output);
    }
    if (bench_cmd->parsed()) {
      return run_bench(config, bench_m, bench_sweep, bench_mode,
                       bench_no_parametric, bench_active, bench_r, bench_sets,
                       bench_seed, bench_panel);
    }
    if (expt_cmd->parsed()) {
      return run_experiment_cmd(config, spec_path, expt_seed);
    }
    if (tomo_cmd->parsed()) {
      return run_tomography(config, tomo_shots, tomo_seed, tomo_noiseless);
    }
    if (vqe_cmd->parsed()) {
      return run_vqe(config, coeffs_path, vqe_thetas, vqe_shots, vqe_seed,
                     vqe_noiseless);
    }
    if (qaoa_cmd->parsed()) {
      return run_qaoa(config, edges_text, qaoa_beta, qaoa_points, qaoa_shots,
                      qaoa_seed, qaoa_noiseless);
    }
    if (device_cmd->parsed()) {
      std::cout << qcp::device_to_json(config.load_device()) << std::endl;
      return 0;
    }
    if (serve_cmd->parsed()) {
      return run_serve(config, serve_port);
    }
    emit_error("usage", "unknown subcommand");
    return kExitUsage;
  } catch (const qcp::ParseError& e) {
    emit_error("parse", e.what());
    return kExitCompile;
  } catch (const qcp::CompileError& e) {
    emit_error("compile", e.what());
    return kExitCompile;
  } catch (const qcp::ExecutionError& e) {
    emit_error("execution", e.what());
    return kExitExecution;
  } catch (const std::invalid_argument& e) {
    emit_error("usage", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitExecution;
  }
}
