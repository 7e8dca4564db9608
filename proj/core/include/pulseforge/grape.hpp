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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pulseforge/dynamics.hpp"
#include "pulseforge/linalg.hpp"
#include "pulseforge/model.hpp"
#include "pulseforge/provenance.hpp"

namespace pulseforge {

struct OptimizerConfig {
  std::size_t max_iterations = 500;
  double amplitude_bound = 2.0 * 3.14159265358979323846 * 0.05;  // rad/ns
  double gradient_tolerance = 1e-8;
  double fidelity_target = 0.999;
  std::uint64_t seed = 42;
  std::size_t memory_pairs = 10;
  double init_scale = 0.1;  // fraction of amplitude_bound
  // Grid for the seeded random start, used only when no initial pulse is given.
  double duration_ns = 20.0;
  std::size_t n_slices = 100;
};

/// Throws UsageError if the config violates its invariants.
void validate(const OptimizerConfig& config);

enum class StopReason {
  kFidelityTarget,
  kGradientTolerance,
  kMaxIterations,
  kLineSearchFailure,
};

std::string_view to_string(StopReason reason) noexcept;

struct OptimizationResult {
  PulseSequence pulse;
  std::vector<double> fidelity_history;  // best-so-far, index 0 = start
  double final_fidelity = 0.0;
  std::size_t iterations_used = 0;
  bool converged = false;
  double final_gradient_norm = 0.0;  // projected gradient, infinity norm
  StopReason stop_reason = StopReason::kMaxIterations;
  OptimizerConfig config;
  Provenance provenance;
};

/// Target embedded in the top-left block of a dim x dim zero matrix.
ComplexMatrix embed_target(const GateSpec& gate, std::size_t dim);

/// F = |Tr(U_target^dag P U P)|^2 / d^2 with P the projector on the
/// computational subspace, so F(U_target, gate) = 1.
double gate_fidelity(const ComplexMatrix& u_final, const GateSpec& gate);

struct FidelityGradient {
  std::vector<double> grads_i;
  std::vector<double> grads_q;
  double fidelity = 0.0;
};

/// Exact dF/dOmega for every slice of both channels, from forward/backward
/// propagator products and the spectral Frechet derivative of each slice.
FidelityGradient fidelity_gradient(const ComplexMatrix& drift,
                                   const ComplexMatrix& h_i,
                                   const ComplexMatrix& h_q,
                                   const PulseSequence& pulse,
                                   const GateSpec& gate);

/// Seeded uniform start in [-init_scale * bound, +init_scale * bound].
PulseSequence random_initial_pulse(const OptimizerConfig& config);

/// Maximizes the closed-system gate fidelity inside the box
/// |Omega| <= amplitude_bound using projected limited-memory BFGS with
/// Armijo backtracking. Deterministic for a fixed config and initial pulse.
OptimizationResult optimize(const ComplexMatrix& drift,
                            const ComplexMatrix& h_i,
                            const ComplexMatrix& h_q, const GateSpec& gate,
                            const std::optional<PulseSequence>& initial,
                            const OptimizerConfig& config);

enum class EvaluationMode { kClosed, kOpen };

std::string_view to_string(EvaluationMode mode) noexcept;
/// Accepts "closed" or "open".
EvaluationMode parse_evaluation_mode(std::string_view text);

/// Restriction of a d^2 x d^2 superoperator to the computational block,
/// returned as a 4 x 4 column-stacked map.
ComplexMatrix project_superoperator(const ComplexMatrix& super, std::size_t dim,
                                    std::size_t subspace_dim = 2);

/// Process fidelity Re Tr(S_target^dag S) / d^2, S_target = conj(U) ⊗ U.
double process_fidelity(const ComplexMatrix& super, std::size_t dim,
                        const GateSpec& gate);

/// Closed: gate_fidelity of the unitary propagator. Open: process fidelity of
/// the Lindblad channel.
double evaluate_pulse(const LindbladModel& model, const PulseSequence& pulse,
                      const GateSpec& gate, EvaluationMode mode);

}  // namespace pulseforge
