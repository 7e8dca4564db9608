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

#pragma once

// Result files: pulse.json, result.json, compare.json, convergence.csv and
// bloch.csv. JSON numbers are written with round-trip precision, so loading a
// saved pulse returns bit-identical amplitudes.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pulseforge/dynamics.hpp"
#include "pulseforge/grape.hpp"
#include "pulseforge/model.hpp"
#include "pulseforge/report.hpp"

namespace pulseforge {

/// The config, when given, is recorded as provenance.config.
std::string pulse_to_json(const PulseSequence& pulse,
                          const std::optional<Provenance>& provenance = std::nullopt,
                          const std::optional<OptimizerConfig>& config = std::nullopt);
/// Throws ParseError / SchemaError on bad input.
PulseSequence pulse_from_json(std::string_view text);

std::string config_to_json(const OptimizerConfig& config);
std::string result_to_json(const OptimizationResult& result);
std::string report_to_json(const ComparisonReport& report);
std::string calibration_to_json(const DeviceCalibration& calib);

/// Header "iteration,fidelity", one row per history entry.
std::string convergence_csv(std::span<const double> fidelity_history);
/// Header "t_ns,x,y,z", one row per sample.
std::string bloch_csv(std::span<const BlochSample> samples);

/// Writes text to path, creating parent directories. Throws TransportError.
void write_text_file(const std::filesystem::path& path, std::string_view text);
/// Throws TransportError if the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace pulseforge
