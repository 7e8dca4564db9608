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

// Transmon model pieces. Units everywhere in the engine: time in ns, angular
// frequencies and drive amplitudes in rad/ns.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pulseforge/linalg.hpp"

namespace pulseforge {

/// Physical parameters of one qubit in engine units.
class DeviceCalibration {
 public:
  /// Throws PhysicalityError unless t1 > 0, 0 < t2 <= 2 t1 and alpha <= 0.
  DeviceCalibration(std::string qubit_id, double t1_ns, double t2_ns,
                    double omega_q, double alpha,
                    std::string source_timestamp = {});

  const std::string& qubit_id() const noexcept { return qubit_id_; }
  double t1() const noexcept { return t1_; }
  double t2() const noexcept { return t2_; }
  double omega_q() const noexcept { return omega_q_; }
  double alpha() const noexcept { return alpha_; }
  const std::string& source_timestamp() const noexcept { return source_timestamp_; }

  /// gamma_1 = 1 / T1
  double relaxation_rate() const noexcept { return 1.0 / t1_; }
  /// gamma_phi = 1 / T2 - 1 / (2 T1), clamped at zero against rounding.
  double dephasing_rate() const noexcept;

 private:
  std::string qubit_id_;
  double t1_;
  double t2_;
  double omega_q_;
  double alpha_;
  std::string source_timestamp_;
};

struct TruncatedOscillator {
  std::size_t dim;
  ComplexMatrix lowering;
  ComplexMatrix raising;
  ComplexMatrix number;
};

/// Piecewise-constant I/Q drive: slice k covers [k dt, (k+1) dt).
class PulseSequence {
 public:
  /// Slice count is amps_i.size(); dt = duration / n_slices. Throws
  /// UsageError if the channels differ in length, are empty, duration <= 0,
  /// or any amplitude is non-finite.
  PulseSequence(double duration_ns, std::vector<double> amps_i,
                std::vector<double> amps_q);

  static PulseSequence zeros(double duration_ns, std::size_t n_slices);

  double duration() const noexcept { return duration_; }
  std::size_t n_slices() const noexcept { return amps_i_.size(); }
  double dt() const noexcept { return dt_; }
  const std::vector<double>& amps_i() const noexcept { return amps_i_; }
  const std::vector<double>& amps_q() const noexcept { return amps_q_; }

  bool operator==(const PulseSequence&) const = default;

 private:
  double duration_;
  double dt_;
  std::vector<double> amps_i_;
  std::vector<double> amps_q_;
};

struct GateSpec {
  std::string name;
  ComplexMatrix target;  // 2x2, unitary within 1e-12
  std::size_t subspace_dim = 2;
};

enum class Frame { kLab, kRotating };

std::string_view to_string(Frame frame) noexcept;
/// Accepts "lab" or "rotating"; throws UsageError otherwise.
Frame parse_frame(std::string_view text);

TruncatedOscillator build_oscillator(std::size_t dim);

/// Diagonal transmon drift: omega_q n + (alpha / 2) n (n - 1) in the lab
/// frame, with the omega_q term removed in the frame rotating at omega_q.
ComplexMatrix build_drift(const DeviceCalibration& calib, std::size_t dim,
                          Frame frame);

struct ControlHamiltonians {
  ComplexMatrix in_phase;    // a + a^dagger
  ComplexMatrix quadrature;  // i a^dagger - i a
};

ControlHamiltonians build_controls(std::size_t dim);

/// Gaussian envelope on the I channel, sampled at slice midpoints and scaled
/// so that 2 * sum(amps_i) * dt == rotation_angle. Under H = Omega * sigma_x
/// this is a rotation exp(-i rotation_angle sigma_x / 2).
PulseSequence gaussian_pulse(double duration_ns, std::size_t n_slices,
                             double sigma_ns, double rotation_angle);

/// One of X, Y, Z, H, I, SX. Throws UsageError for anything else.
GateSpec standard_gate(std::string_view name);

}  // namespace pulseforge
