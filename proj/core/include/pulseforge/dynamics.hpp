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

// Closed and open (Lindblad) evolution under piecewise-constant controls.
//
// Slice k applies H_k = drift + amps_i[k] h_i + amps_q[k] h_q for dt; the total
// propagator is U_N ... U_2 U_1 with the earliest slice applied first. Open
// evolution exponentiates the column-stacked Lindblad generator per slice.

#include <array>
#include <cstddef>
#include <vector>

#include "pulseforge/linalg.hpp"
#include "pulseforge/model.hpp"

namespace pulseforge {

struct JumpOperator {
  ComplexMatrix op;
  double rate;  // 1/ns, >= 0
};

struct LindbladModel {
  ComplexMatrix drift;
  ComplexMatrix h_i;
  ComplexMatrix h_q;
  std::vector<JumpOperator> jumps;

  std::size_t dim() const noexcept { return drift.dim(); }

  /// Same Hamiltonians with every dissipator removed.
  LindbladModel without_noise() const { return {drift, h_i, h_q, {}}; }
};

/// Throws UsageError on inconsistent dimensions or a negative rate.
void validate(const LindbladModel& model);

struct UnitaryEvolution {
  ComplexMatrix final_unitary;
  std::vector<ComplexMatrix> slice_propagators;  // U_1 ... U_N
};

struct DensityEvolution {
  ComplexMatrix final_density;
  std::vector<ComplexMatrix> states;  // rho at every slice boundary, N + 1
};

struct BlochSample {
  double t_ns;
  std::array<double, 3> xyz;
};

/// Hamiltonian of one slice.
ComplexMatrix slice_hamiltonian(const ComplexMatrix& drift,
                                const ComplexMatrix& h_i,
                                const ComplexMatrix& h_q, double omega_i,
                                double omega_q);

UnitaryEvolution propagate_unitary(const ComplexMatrix& drift,
                                   const ComplexMatrix& h_i,
                                   const ComplexMatrix& h_q,
                                   const PulseSequence& pulse);

/// d^2 x d^2 generator G with vec(d rho / dt) = G vec(rho):
///   G = -i (I ⊗ H - H^T ⊗ I)
///       + sum_k gamma_k [conj(L_k) ⊗ L_k - 1/2 I ⊗ L_k^dag L_k
///                        - 1/2 (L_k^dag L_k)^T ⊗ I].
ComplexMatrix lindblad_generator(const LindbladModel& model, double omega_i,
                                 double omega_q);

/// Throws ValidationError unless rho is Hermitian, unit-trace and PSD within
/// 1e-10.
void validate_density(const ComplexMatrix& rho);

DensityEvolution propagate_density(const LindbladModel& model,
                                   const PulseSequence& pulse,
                                   const ComplexMatrix& rho0);

/// Time-ordered process map S = E_N ... E_1, E_k = exp(G_k dt).
ComplexMatrix channel_superoperator(const LindbladModel& model,
                                    const PulseSequence& pulse);

/// Column-stacking vectorization and its inverse.
std::vector<Complex> vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(std::span<const Complex> v, std::size_t dim);

/// Bloch vector of the {0, 1} block: (Tr(P sx P rho), Tr(P sy P rho),
/// Tr(P sz P rho)).
std::array<double, 3> bloch_vector(const ComplexMatrix& rho);

/// N + 1 samples at slice boundaries, starting at t = 0.
std::vector<BlochSample> bloch_trajectory(const LindbladModel& model,
                                          const PulseSequence& pulse,
                                          const ComplexMatrix& rho0);

/// |k><k| embedded in the given dimension.
ComplexMatrix basis_projector(std::size_t dim, std::size_t level);

}  // namespace pulseforge
