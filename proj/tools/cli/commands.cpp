// Copyright 2026 The PulseForge Authors
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

#include "cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pulseforge/pulseforge.hpp"

namespace pulseforge::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct TwinOptions {
  std::string calibration;
  std::string qubit;
  std::size_t dim = 2;
  std::string frame = "rotating";
};

struct OptimizeOptions {
  std::string gate = "X";
  double duration_ns = 20.0;
  std::size_t slices = 100;
  double bound_mhz = 50.0;
  std::uint64_t seed = 42;
  std::size_t max_iters = 500;
  double fidelity_target = 0.999;
  double gradient_tol = 1e-8;
  std::size_t memory = 10;
  double init_scale = 0.1;
  std::string initial;
  std::string out = ".";
};

struct ResolvedTwin {
  DeviceCalibration calibration;
  LindbladModel model;
  std::string hash;
};

void add_twin_options(CLI::App& cmd, TwinOptions& o) {
  cmd.add_option("--calibration", o.calibration,
                 "Calibration document: local path or http(s) URL "
                 "(default: representative transmon parameters)");
  cmd.add_option("--qubit", o.qubit, "Qubit id (default: first in document)");
  cmd.add_option("--dim", o.dim, "Transmon truncation")
      ->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  cmd.add_option("--frame", o.frame, "Drift frame")
      ->check(CLI::IsMember({"lab", "rotating"}))
      ->capture_default_str();
}

void add_gate_option(CLI::App& cmd, std::string& gate) {
  cmd.add_option("--gate", gate, "Target gate")
      ->check(CLI::IsMember({"X", "Y", "Z", "H", "I", "SX"}))
      ->capture_default_str();
}

void add_mode_option(CLI::App& cmd, std::string& mode) {
  cmd.add_option("--mode", mode, "Evaluation mode")
      ->check(CLI::IsMember({"closed", "open"}))
      ->capture_default_str();
}

void add_optimize_options(CLI::App& cmd, OptimizeOptions& o) {
  add_gate_option(cmd, o.gate);
  cmd.add_option("--duration-ns", o.duration_ns, "Gate duration in ns")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--slices", o.slices, "Number of piecewise-constant slices")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}))
      ->capture_default_str();
  cmd.add_option("--bound-mhz", o.bound_mhz,
                 "Amplitude bound |Omega| / 2pi in MHz")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--seed", o.seed, "RNG seed (overridden by PULSEFORGE_SEED)")
      ->capture_default_str();
  cmd.add_option("--max-iters", o.max_iters, "Iteration cap")->capture_default_str();
  cmd.add_option("--fidelity-target", o.fidelity_target, "Stop at this fidelity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--gradient-tol", o.gradient_tol, "Projected-gradient tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--memory", o.memory, "Curvature pairs kept by L-BFGS")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}))
      ->capture_default_str();
  cmd.add_option("--init-scale", o.init_scale,
                 "Random start half-width as a fraction of the bound")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--initial", o.initial, "Start from this pulse.json");
  cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
}

ResolvedTwin resolve_twin(const TwinOptions& o) {
  std::optional<DeviceCalibration> calib;
  if (o.calibration.empty()) {
    if (!o.qubit.empty()) throw UsageError("--qubit requires --calibration");
    calib = representative_garnet();
  } else {
    const CalibrationDocument doc =
        parse_calibration(fetch_calibration(o.calibration));
    if (o.qubit.empty()) {
      if (doc.qubits.empty()) {
        throw LookupError("calibration document '" + o.calibration +
                          "' lists no qubits");
      }
      calib = select_qubit(doc, doc.qubits.front().id);
    } else {
      calib = select_qubit(doc, o.qubit);
    }
  }
  LindbladModel model = build_twin(*calib, o.dim, parse_frame(o.frame));
  std::string hash = calibration_hash(*calib);
  return {std::move(*calib), std::move(model), std::move(hash)};
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  const char* env = std::getenv("PULSEFORGE_SEED");
  if (env == nullptr || *env == '\0') return flag_seed;
  try {
    std::size_t used = 0;
    const std::uint64_t seed = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return seed;
  } catch (const std::exception&) {
    throw UsageError(std::string("PULSEFORGE_SEED is not an unsigned integer: '") +
                     env + "'");
  }
}

OptimizerConfig make_config(const OptimizeOptions& o) {
  OptimizerConfig c;
  c.max_iterations = o.max_iters;
  c.amplitude_bound = 2.0 * std::numbers::pi * (o.bound_mhz / 1000.0);
  c.gradient_tolerance = o.gradient_tol;
  c.fidelity_target = o.fidelity_target;
  c.seed = effective_seed(o.seed);
  c.memory_pairs = o.memory;
  c.init_scale = o.init_scale;
  c.duration_ns = o.duration_ns;
  c.n_slices = o.slices;
  return c;
}

OptimizationResult run_optimizer(const ResolvedTwin& twin,
                                 const OptimizeOptions& o,
                                 OptimizerConfig& config) {
  std::optional<PulseSequence> initial;
  if (!o.initial.empty()) {
    initial = pulse_from_json(read_text_file(o.initial));
    config.duration_ns = initial->duration();
    config.n_slices = initial->n_slices();
  }
  OptimizationResult result =
      optimize(twin.model.drift, twin.model.h_i, twin.model.h_q,
               standard_gate(o.gate), initial, config);
  result.provenance.calibration_hash = twin.hash;
  return result;
}

ComplexMatrix initial_state(const std::string& label, std::size_t dim) {
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  std::vector<Complex> psi(dim, Complex{});
  if (label == "0") {
    psi[0] = 1.0;
  } else if (label == "1") {
    psi[1] = 1.0;
  } else if (label == "+") {
    psi[0] = h;
    psi[1] = h;
  } else if (label == "-") {
    psi[0] = h;
    psi[1] = -h;
  } else if (label == "+i") {
    psi[0] = h;
    psi[1] = h * i;
  } else if (label == "-i") {
    psi[0] = h;
    psi[1] = -h * i;
  } else {
    throw UsageError("unknown state '" + label + "'");
  }
  ComplexMatrix rho(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) rho(a, b) = psi[a] * std::conj(psi[b]);
  }
  return rho;
}

json reduction_json(const ComparisonReport& report) {
  if (report.reduction_factor) return *report.reduction_factor;
  return "inf";
}

int cmd_twin(const TwinOptions& o, std::ostream& out) {
  const ResolvedTwin twin = resolve_twin(o);
  json doc = json::parse(calibration_to_json(twin.calibration));
  doc["dim"] = o.dim;
  doc["frame"] = o.frame;
  doc["calibration_hash"] = twin.hash;
  out << doc.dump(2) << "\n";
  return kSuccess;
}

int cmd_optimize(const TwinOptions& t, const OptimizeOptions& o, std::ostream& out) {
  const ResolvedTwin twin = resolve_twin(t);
  OptimizerConfig config = make_config(o);
  const OptimizationResult result = run_optimizer(twin, o, config);

  const fs::path dir(o.out);
  write_text_file(dir / "pulse.json",
                  pulse_to_json(result.pulse, result.provenance, result.config));
  write_text_file(dir / "convergence.csv", convergence_csv(result.fidelity_history));
  write_text_file(dir / "result.json", result_to_json(result));

  const json summary = {{"final_fidelity", result.final_fidelity},
                        {"iterations_used", result.iterations_used},
                        {"converged", result.converged},
                        {"stop_reason", std::string(to_string(result.stop_reason))},
                        {"out_dir", dir.string()}};
  out << summary.dump() << "\n";
  return result.converged ? kSuccess : kNotConverged;
}

int cmd_compare(const TwinOptions& t, const OptimizeOptions& o,
                const std::string& mode_text, std::ostream& out) {
  const ResolvedTwin twin = resolve_twin(t);
  OptimizerConfig config = make_config(o);
  const OptimizationResult result = run_optimizer(twin, o, config);

  const GateSpec gate = standard_gate(o.gate);
  const EvaluationMode mode = parse_evaluation_mode(mode_text);
  const PulseSequence& optimized = result.pulse;
  const PulseSequence baseline =
      gaussian_pulse(optimized.duration(), optimized.n_slices(),
                     optimized.duration() / 6.0, std::numbers::pi);
  const ComparisonReport report = make_comparison_report(
      gate.name, mode, evaluate_pulse(twin.model, baseline, gate, mode),
      evaluate_pulse(twin.model, optimized, gate, mode), config,
      result.provenance);

  write_text_file(fs::path(o.out) / "compare.json", report_to_json(report));
  out << json{{"F_std", report.fidelity_standard}}.dump() << "\n";
  out << json{{"F_opt", report.fidelity_optimized}}.dump() << "\n";
  out << json{{"reduction_factor", reduction_json(report)}}.dump() << "\n";
  return result.converged ? kSuccess : kNotConverged;
}

int cmd_bloch(const TwinOptions& t, const std::string& pulse_path,
              const std::string& state, const std::string& mode_text,
              const std::string& out_dir, std::ostream& out) {
  const PulseSequence pulse = pulse_from_json(read_text_file(pulse_path));
  const ResolvedTwin twin = resolve_twin(t);
  const LindbladModel model = parse_evaluation_mode(mode_text) == EvaluationMode::kClosed
                                  ? twin.model.without_noise()
                                  : twin.model;
  const auto samples =
      bloch_trajectory(model, pulse, initial_state(state, model.dim()));
  const fs::path path = fs::path(out_dir) / "bloch.csv";
  write_text_file(path, bloch_csv(samples));
  const auto& last = samples.back().xyz;
  out << json{{"path", path.string()},
              {"rows", samples.size()},
              {"final", {last[0], last[1], last[2]}}}
             .dump()
      << "\n";
  return kSuccess;
}

int cmd_simulate(const TwinOptions& t, const std::string& pulse_path,
                 const std::string& gate_name, const std::string& mode_text,
                 std::ostream& out) {
  const PulseSequence pulse = pulse_from_json(read_text_file(pulse_path));
  const ResolvedTwin twin = resolve_twin(t);
  const GateSpec gate = standard_gate(gate_name);
  const EvaluationMode mode = parse_evaluation_mode(mode_text);
  const double fidelity = evaluate_pulse(twin.model, pulse, gate, mode);
  out << json{{"fidelity", fidelity},
              {"error", 1.0 - fidelity},
              {"mode", mode_text},
              {"gate", gate.name},
              {"qubit_id", twin.calibration.qubit_id()},
              {"calibration_hash", twin.hash}}
             .dump()
      << "\n";
  return kSuccess;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pulseforge: GRAPE pulse optimization against a transmon digital twin",
               "pulseforge"};
  app.require_subcommand(1);

  TwinOptions twin_opts;
  OptimizeOptions opt_opts;
  std::string mode = "closed";
  std::string pulse_path;
  std::string state = "0";
  std::string gate = "X";
  std::string out_dir = ".";

  auto* twin_cmd = app.add_subcommand("twin", "Resolve a calibration into a digital twin");
  add_twin_options(*twin_cmd, twin_opts);

  auto* optimize_cmd = app.add_subcommand("optimize", "Run GRAPE for a target gate");
  add_twin_options(*optimize_cmd, twin_opts);
  add_optimize_options(*optimize_cmd, opt_opts);

  auto* compare_cmd =
      app.add_subcommand("compare", "Compare GRAPE against a Gaussian pi pulse");
  add_twin_options(*compare_cmd, twin_opts);
  add_optimize_options(*compare_cmd, opt_opts);
  add_mode_option(*compare_cmd, mode);

  auto* bloch_cmd = app.add_subcommand("bloch", "Export the Bloch trajectory of a pulse");
  add_twin_options(*bloch_cmd, twin_opts);
  bloch_cmd->add_option("--pulse", pulse_path, "pulse.json to play")->required();
  bloch_cmd->add_option("--state", state, "Initial state: 0, 1, +, -, +i, -i")
      ->check(CLI::IsMember({"0", "1", "+", "-", "+i", "-i"}))
      ->capture_default_str();
  add_mode_option(*bloch_cmd, mode);
  bloch_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  std::string simulate_mode = "open";
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Evaluate a pulse under the digital twin");
  add_twin_options(*simulate_cmd, twin_opts);
  simulate_cmd->add_option("--pulse", pulse_path, "pulse.json to evaluate")->required();
  add_gate_option(*simulate_cmd, gate);
  add_mode_option(*simulate_cmd, simulate_mode);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("pulseforge");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (twin_cmd->parsed()) return cmd_twin(twin_opts, out);
    if (optimize_cmd->parsed()) return cmd_optimize(twin_opts, opt_opts, out);
    if (compare_cmd->parsed()) return cmd_compare(twin_opts, opt_opts, mode, out);
    if (bloch_cmd->parsed()) {
      return cmd_bloch(twin_opts, pulse_path, state, mode, out_dir, out);
    }
    if (simulate_cmd->parsed()) {
      return cmd_simulate(twin_opts, pulse_path, gate, simulate_mode, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace pulseforge::cli
