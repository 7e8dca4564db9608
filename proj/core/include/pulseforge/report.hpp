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

#include <optional>
#include <string>

#include "pulseforge/grape.hpp"
#include "pulseforge/provenance.hpp"

namespace pulseforge {

/// Standard-pulse versus optimized-pulse comparison for one gate.
struct ComparisonReport {
  std::string gate_name;
  EvaluationMode mode = EvaluationMode::kClosed;
  double fidelity_standard = 0.0;
  double fidelity_optimized = 0.0;
  double error_standard = 0.0;   // 1 - fidelity_standard
  double error_optimized = 0.0;  // 1 - fidelity_optimized
  /// error_standard / error_optimized; empty when error_optimized <= 0, which
  /// serializes as the "inf" sentinel.
  std::optional<double> reduction_factor;
  OptimizerConfig config;
  Provenance provenance;
};

ComparisonReport make_comparison_report(std::string gate_name,
                                        EvaluationMode mode,
                                        double fidelity_standard,
                                        double fidelity_optimized,
                                        const OptimizerConfig& config,
                                        Provenance provenance);

}  // namespace pulseforge
