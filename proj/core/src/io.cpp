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

#include "pulseforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pulseforge/errors.hpp"

namespace pulseforge {

using nlohmann::json;

namespace {

json provenance_json(const Provenance& p) {
  return {{"seed", p.seed},
          {"calibration_hash", p.calibration_hash},
          {"timestamp", p.timestamp},
          {"tool_version", p.tool_version}};
}

json config_json(const OptimizerConfig& c) {
  return {{"max_iterations", c.max_iterations},
          {"amplitude_bound_rad_per_ns", c.amplitude_bound},
          {"gradient_tolerance", c.gradient_tolerance},
          {"fidelity_target", c.fidelity_target},
          {"seed", c.seed},
          {"memory_pairs", c.memory_pairs},
          {"init_scale", c.init_scale},
          {"duration_ns", c.duration_ns},
          {"n_slices", c.n_slices}};
}

json pulse_json(const PulseSequence& p) {
  return {{"duration_ns", p.duration()},
          {"n_slices", p.n_slices()},
          {"dt_ns", p.dt()},
          {"units", "rad/ns"},
          {"amps_i", p.amps_i()},
          {"amps_q", p.amps_q()}};
}

std::vector<double> number_array(const json& root, const char* field) {
  const auto it = root.find(field);
  if (it == root.end()) throw SchemaError(std::string("pulse: missing field '") + field + "'");
  if (!it->is_array()) {
    throw SchemaError(std::string("pulse: field '") + field + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_number()) {
      throw SchemaError(std::string("pulse: field '") + field +
                        "' must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

std::string pulse_to_json(const PulseSequence& pulse,
                          const std::optional<Provenance>& provenance,
                          const std::optional<OptimizerConfig>& config) {
  json root = pulse_json(pulse);
  if (provenance) root["provenance"] = provenance_json(*provenance);
  if (config) root["provenance"]["config"] = config_json(*config);
  return root.dump(2) + "\n";
}

PulseSequence pulse_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("pulse: malformed JSON: ") + e.what(), e.byte);
  }
  if (!root.is_object()) throw SchemaError("pulse: document must be an object");
  const auto duration = root.find("duration_ns");
  if (duration == root.end() || !duration->is_number()) {
    throw SchemaError("pulse: 'duration_ns' must be a number");
  }
  std::vector<double> amps_i = number_array(root, "amps_i");
  std::vector<double> amps_q = number_array(root, "amps_q");
  const std::size_t n = amps_i.size();
  if (const auto it = root.find("n_slices"); it != root.end()) {
    if (!it->is_number_unsigned() || it->get<std::size_t>() != n) {
      throw SchemaError("pulse: 'n_slices' does not match the amplitude arrays");
    }
  }
  try {
    PulseSequence pulse(duration->get<double>(), std::move(amps_i), std::move(amps_q));
    if (const auto it = root.find("dt_ns"); it != root.end()) {
      if (!it->is_number() ||
          std::abs(it->get<double>() * static_cast<double>(n) - pulse.duration()) >
              1e-9 * pulse.duration()) {
        throw SchemaError("pulse: 'dt_ns' is inconsistent with duration / n_slices");
      }
    }
    return pulse;
  } catch (const UsageError& e) {
    throw SchemaError(std::string("pulse: ") + e.what());
  }
}

std::string config_to_json(const OptimizerConfig& config) {
  return config_json(config).dump(2) + "\n";
}

std::string result_to_json(const OptimizationResult& r) {
  json root = {{"final_fidelity", r.final_fidelity},
               {"iterations_used", r.iterations_used},
               {"converged", r.converged},
               {"final_gradient_norm", r.final_gradient_norm},
               {"stop_reason", std::string(to_string(r.stop_reason))},
               {"fidelity_history", r.fidelity_history},
               {"pulse", pulse_json(r.pulse)},
               {"config", config_json(r.config)},
               {"provenance", provenance_json(r.provenance)}};
  root["provenance"]["config"] = config_json(r.config);
  return root.dump(2) + "\n";
}

std::string report_to_json(const ComparisonReport& r) {
  json root = {{"gate_name", r.gate_name},
               {"mode", std::string(to_string(r.mode))},
               {"fidelity_standard", r.fidelity_standard},
               {"fidelity_optimized", r.fidelity_optimized},
               {"error_standard", r.error_standard},
               {"error_optimized", r.error_optimized},
               {"provenance", provenance_json(r.provenance)}};
  if (r.reduction_factor) {
    root["reduction_factor"] = *r.reduction_factor;
  } else {
    root["reduction_factor"] = "inf";
  }
  root["provenance"]["config"] = config_json(r.config);
  return root.dump(2) + "\n";
}

std::string calibration_to_json(const DeviceCalibration& c) {
  const json root = {{"qubit_id", c.qubit_id()},
                     {"t1_ns", c.t1()},
                     {"t2_ns", c.t2()},
                     {"omega_q_rad_per_ns", c.omega_q()},
                     {"alpha_rad_per_ns", c.alpha()},
                     {"source_timestamp", c.source_timestamp()},
                     {"gamma_1_per_ns", c.relaxation_rate()},
                     {"gamma_phi_per_ns", c.dephasing_rate()}};
  return root.dump(2) + "\n";
}

std::string convergence_csv(std::span<const double> fidelity_history) {
  std::string out = "iteration,fidelity\n";
  for (std::size_t k = 0; k < fidelity_history.size(); ++k) {
    out += std::to_string(k) + "," + format_double(fidelity_history[k]) + "\n";
  }
  return out;
}

std::string bloch_csv(std::span<const BlochSample> samples) {
  std::string out = "t_ns,x,y,z\n";
  for (const auto& s : samples) {
    out += format_double(s.t_ns) + "," + format_double(s.xyz[0]) + "," +
           format_double(s.xyz[1]) + "," + format_double(s.xyz[2]) + "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TransportError("cannot write '" + path.string() + "'", path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw TransportError("error writing '" + path.string() + "'", path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TransportError("cannot open '" + path.string() + "'", path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace pulseforge
