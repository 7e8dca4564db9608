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

#include "pulseforge/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pulseforge/errors.hpp"

namespace pulseforge {

DeviceCalibration::DeviceCalibration(std::string qubit_id, double t1_ns,
                                     double t2_ns, double omega_q, double alpha,
                                     std::string source_timestamp)
    : qubit_id_(std::move(qubit_id)),
      t1_(t1_ns),
      t2_(t2_ns),
      omega_q_(omega_q),
      alpha_(alpha),
      source_timestamp_(std::move(source_timestamp)) {
  const std::string who = "qubit '" + qubit_id_ + "': ";
  if (!std::isfinite(t1_) || !std::isfinite(t2_) || !std::isfinite(omega_q_) ||
      !std::isfinite(alpha_)) {
    throw PhysicalityError(who + "calibration values must be finite");
  }
  if (!(t1_ > 0.0)) throw PhysicalityError(who + "T1 must be positive");
  if (!(t2_ > 0.0)) throw PhysicalityError(who + "T2 must be positive");
  if (t2_ > 2.0 * t1_) {
    throw PhysicalityError(who + "T2 = " + std::to_string(t2_) +
                           " ns exceeds 2*T1 = " + std::to_string(2.0 * t1_) +
                           " ns");
  }
  if (alpha_ > 0.0) {
    throw PhysicalityError(who + "anharmonicity must be <= 0 for a transmon");
  }
}

double DeviceCalibration::dephasing_rate() const noexcept {
  return std::max(0.0, 1.0 / t2_ - 1.0 / (2.0 * t1_));
}

PulseSequence::PulseSequence(double duration_ns, std::vector<double> amps_i,
                             std::vector<double> amps_q)
    : duration_(duration_ns),
      dt_(0.0),
      amps_i_(std::move(amps_i)),
      amps_q_(std::move(amps_q)) {
  if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
    throw UsageError("PulseSequence: duration must be positive and finite");
  }
  if (amps_i_.empty()) throw UsageError("PulseSequence: need at least one slice");
  if (amps_i_.size() != amps_q_.size()) {
    throw UsageError("PulseSequence: I and Q channels differ in length");
  }
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(amps_i_.begin(), amps_i_.end(), finite) ||
      !std::all_of(amps_q_.begin(), amps_q_.end(), finite)) {
    throw UsageError("PulseSequence: amplitudes must be finite");
  }
  dt_ = duration_ / static_cast<double>(amps_i_.size());
}

PulseSequence PulseSequence::zeros(double duration_ns, std::size_t n_slices) {
  return PulseSequence(duration_ns, std::vector<double>(n_slices, 0.0),
                       std::vector<double>(n_slices, 0.0));
}

std::string_view to_string(Frame frame) noexcept {
  return frame == Frame::kLab ? "lab" : "rotating";
}

Frame parse_frame(std::string_view text) {
  if (text == "lab") return Frame::kLab;
  if (text == "rotating") return Frame::kRotating;
  throw UsageError("unknown frame '" + std::string(text) +
                   "' (expected lab or rotating)");
}

TruncatedOscillator build_oscillator(std::size_t dim) {
  if (dim < 2) throw UsageError("build_oscillator: dim must be >= 2");
  ComplexMatrix a(dim);
  for (std::size_t n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  ComplexMatrix a_dag = adjoint(a);
  ComplexMatrix number = a_dag * a;
  return {dim, std::move(a), std::move(a_dag), std::move(number)};
}

ComplexMatrix build_drift(const DeviceCalibration& calib, std::size_t dim,
                          Frame frame) {
  if (dim < 2) throw UsageError("build_drift: dim must be >= 2");
  std::vector<double> diag(dim);
  const double omega = frame == Frame::kLab ? calib.omega_q() : 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double n = static_cast<double>(k);
    diag[k] = omega * n + 0.5 * calib.alpha() * n * (n - 1.0);
  }
  return ComplexMatrix::diagonal(std::span<const double>(diag));
}

ControlHamiltonians build_controls(std::size_t dim) {
  const TruncatedOscillator osc = build_oscillator(dim);
  const Complex i{0.0, 1.0};
  return {osc.lowering + osc.raising, i * osc.raising - i * osc.lowering};
}

PulseSequence gaussian_pulse(double duration_ns, std::size_t n_slices,
                             double sigma_ns, double rotation_angle) {
  if (!(duration_ns > 0.0)) throw UsageError("gaussian_pulse: duration must be > 0");
  if (n_slices < 1) throw UsageError("gaussian_pulse: n_slices must be >= 1");
  if (!(sigma_ns > 0.0)) throw UsageError("gaussian_pulse: sigma must be > 0");
  if (!std::isfinite(rotation_angle)) {
    throw UsageError("gaussian_pulse: rotation angle must be finite");
  }

  const double dt = duration_ns / static_cast<double>(n_slices);
  const double center = 0.5 * duration_ns;
  std::vector<double> shape(n_slices);
  double area = 0.0;
  for (std::size_t k = 0; k < n_slices; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * dt;
    const double x = (t - center) / sigma_ns;
    shape[k] = std::exp(-0.5 * x * x);
    area += shape[k];
  }
  const double amplitude = rotation_angle / (2.0 * area * dt);
  for (auto& s : shape) s *= amplitude;
  return PulseSequence(duration_ns, std::move(shape),
                       std::vector<double>(n_slices, 0.0));
}

GateSpec standard_gate(std::string_view name) {
  using std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  const double h = 1.0 / sqrt2;
  if (name == "I") return {"I", ComplexMatrix::identity(2), 2};
  if (name == "X") return {"X", ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}, 2};
  if (name == "Y") return {"Y", ComplexMatrix{{0.0, -i}, {i, 0.0}}, 2};
  if (name == "Z") return {"Z", ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}, 2};
  if (name == "H") return {"H", ComplexMatrix{{h, h}, {h, -h}}, 2};
  if (name == "SX") {
    const Complex p = 0.5 * (1.0 + i);
    const Complex m = 0.5 * (1.0 - i);
    return {"SX", ComplexMatrix{{p, m}, {m, p}}, 2};
  }
  throw UsageError("unknown gate '" + std::string(name) +
                   "' (expected one of X, Y, Z, H, I, SX)");
}

}  // namespace pulseforge
