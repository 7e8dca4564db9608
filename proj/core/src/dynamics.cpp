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

#include "pulseforge/dynamics.hpp"

#include <cmath>
#include <string>

#include "pulseforge/errors.hpp"

namespace pulseforge {

namespace {

void require_dims(const ComplexMatrix& drift, const ComplexMatrix& h_i,
                  const ComplexMatrix& h_q) {
  if (h_i.dim() != drift.dim() || h_q.dim() != drift.dim()) {
    throw UsageError("control Hamiltonians do not match the drift dimension");
  }
}

std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> v) {
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < v.size(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

// Walks the slices, reusing the previous slice map when amplitudes repeat.
template <typename Visit>
void for_each_slice_map(const LindbladModel& model, const PulseSequence& pulse,
                        Visit&& visit) {
  const auto& ai = pulse.amps_i();
  const auto& aq = pulse.amps_q();
  ComplexMatrix map(1);
  for (std::size_t k = 0; k < pulse.n_slices(); ++k) {
    if (k == 0 || ai[k] != ai[k - 1] || aq[k] != aq[k - 1]) {
      map = general_expm(lindblad_generator(model, ai[k], aq[k]) *
                         Complex{pulse.dt(), 0.0});
    }
    visit(k, map);
  }
}

}  // namespace

void validate(const LindbladModel& model) {
  require_dims(model.drift, model.h_i, model.h_q);
  for (const auto& jump : model.jumps) {
    if (jump.op.dim() != model.dim()) {
      throw UsageError("jump operator does not match the model dimension");
    }
    if (!(jump.rate >= 0.0) || !std::isfinite(jump.rate)) {
      throw UsageError("jump rates must be finite and non-negative");
    }
  }
}

ComplexMatrix slice_hamiltonian(const ComplexMatrix& drift,
                                const ComplexMatrix& h_i,
                                const ComplexMatrix& h_q, double omega_i,
                                double omega_q) {
  ComplexMatrix h = drift;
  h += h_i * Complex{omega_i, 0.0};
  h += h_q * Complex{omega_q, 0.0};
  return h;
}

UnitaryEvolution propagate_unitary(const ComplexMatrix& drift,
                                   const ComplexMatrix& h_i,
                                   const ComplexMatrix& h_q,
                                   const PulseSequence& pulse) {
  require_dims(drift, h_i, h_q);
  UnitaryEvolution out{ComplexMatrix::identity(drift.dim()), {}};
  out.slice_propagators.reserve(pulse.n_slices());
  for (std::size_t k = 0; k < pulse.n_slices(); ++k) {
    const ComplexMatrix h = slice_hamiltonian(drift, h_i, h_q, pulse.amps_i()[k],
                                              pulse.amps_q()[k]);
    out.slice_propagators.push_back(herm_expm(h, -pulse.dt()));
    out.final_unitary = out.slice_propagators.back() * out.final_unitary;
  }
  return out;
}

ComplexMatrix lindblad_generator(const LindbladModel& model, double omega_i,
                                 double omega_q) {
  validate(model);
  const std::size_t d = model.dim();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix h =
      slice_hamiltonian(model.drift, model.h_i, model.h_q, omega_i, omega_q);
  const Complex minus_i{0.0, -1.0};

  ComplexMatrix g = (kron(id, h) - kron(transpose(h), id)) * minus_i;
  for (const auto& jump : model.jumps) {
    if (jump.rate == 0.0) continue;
    const ComplexMatrix ldl = adjoint(jump.op) * jump.op;
    ComplexMatrix term = kron(conjugate(jump.op), jump.op);
    term -= kron(id, ldl) * 0.5;
    term -= kron(transpose(ldl), id) * 0.5;
    g += term * Complex{jump.rate, 0.0};
  }
  return g;
}

void validate_density(const ComplexMatrix& rho) {
  constexpr double tol = 1e-10;
  if (!all_finite(rho)) throw ValidationError("density matrix has non-finite entries");
  if (!is_hermitian(rho, tol)) {
    throw ValidationError("density matrix is not Hermitian within 1e-10");
  }
  if (std::abs(trace(rho) - Complex{1.0, 0.0}) > tol) {
    throw ValidationError("density matrix trace differs from 1 by more than 1e-10");
  }
  if (eigh(rho).values.front() < -tol) {
    throw ValidationError("density matrix has a negative eigenvalue below -1e-10");
  }
}

std::vector<Complex> vectorize(const ComplexMatrix& rho) {
  const std::size_t d = rho.dim();
  std::vector<Complex> v(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) v[j * d + i] = rho(i, j);
  }
  return v;
}

ComplexMatrix unvectorize(std::span<const Complex> v, std::size_t dim) {
  if (v.size() != dim * dim) throw UsageError("unvectorize: length is not dim^2");
  ComplexMatrix rho(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) rho(i, j) = v[j * dim + i];
  }
  return rho;
}

DensityEvolution propagate_density(const LindbladModel& model,
                                   const PulseSequence& pulse,
                                   const ComplexMatrix& rho0) {
  validate(model);
  if (rho0.dim() != model.dim()) {
    throw UsageError("initial state does not match the model dimension");
  }
  validate_density(rho0);

  DensityEvolution out{rho0, {}};
  out.states.reserve(pulse.n_slices() + 1);
  out.states.push_back(rho0);
  std::vector<Complex> v = vectorize(rho0);
  for_each_slice_map(model, pulse, [&](std::size_t, const ComplexMatrix& map) {
    v = apply(map, v);
    out.states.push_back(unvectorize(v, model.dim()));
  });
  out.final_density = out.states.back();
  return out;
}

ComplexMatrix channel_superoperator(const LindbladModel& model,
                                    const PulseSequence& pulse) {
  validate(model);
  const std::size_t d = model.dim();
  ComplexMatrix total = ComplexMatrix::identity(d * d);
  for_each_slice_map(model, pulse, [&](std::size_t, const ComplexMatrix& map) {
    total = map * total;
  });
  return total;
}

std::array<double, 3> bloch_vector(const ComplexMatrix& rho) {
  if (rho.dim() < 2) throw UsageError("bloch_vector: dim must be >= 2");
  // Tr(sigma rho) restricted to the {0, 1} block.
  const Complex r01 = rho(0, 1);
  const Complex r10 = rho(1, 0);
  const double x = (r01 + r10).real();
  const double y = (Complex{0.0, 1.0} * (r01 - r10)).real();
  const double z = (rho(0, 0) - rho(1, 1)).real();
  return {x, y, z};
}

std::vector<BlochSample> bloch_trajectory(const LindbladModel& model,
                                          const PulseSequence& pulse,
                                          const ComplexMatrix& rho0) {
  if (model.dim() < 2) throw UsageError("bloch_trajectory: dim must be >= 2");
  const DensityEvolution evo = propagate_density(model, pulse, rho0);
  std::vector<BlochSample> out;
  out.reserve(evo.states.size());
  for (std::size_t k = 0; k < evo.states.size(); ++k) {
    out.push_back({static_cast<double>(k) * pulse.dt(), bloch_vector(evo.states[k])});
  }
  return out;
}

ComplexMatrix basis_projector(std::size_t dim, std::size_t level) {
  if (level >= dim) throw UsageError("basis_projector: level out of range");
  ComplexMatrix p(dim);
  p(level, level) = 1.0;
  return p;
}

}  // namespace pulseforge
