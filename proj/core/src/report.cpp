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

#include "pulseforge/report.hpp"

#include <utility>

namespace pulseforge {

ComparisonReport make_comparison_report(std::string gate_name,
                                        EvaluationMode mode,
                                        double fidelity_standard,
                                        double fidelity_optimized,
                                        const OptimizerConfig& config,
                                        Provenance provenance) {
  ComparisonReport report;
  report.gate_name = std::move(gate_name);
  report.mode = mode;
  report.fidelity_standard = fidelity_standard;
  report.fidelity_optimized = fidelity_optimized;
  report.error_standard = 1.0 - fidelity_standard;
  report.error_optimized = 1.0 - fidelity_optimized;
  if (report.error_optimized > 0.0) {
    report.reduction_factor = report.error_standard / report.error_optimized;
  }
  report.config = config;
  report.provenance = std::move(provenance);
  return report;
}

}  // namespace pulseforge
