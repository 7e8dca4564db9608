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

#include "pulseforge/grape.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <string>

#include "pulseforge/errors.hpp"

namespace pulseforge {

void validate(const OptimizerConfig& config) {
  if (!(config.amplitude_bound > 0.0) || !std::isfinite(config.amplitude_bound)) {
    throw UsageError("optimizer: amplitude_bound must be positive");
  }
  if (!(config.fidelity_target > 0.0 && config.fidelity_target <= 1.0)) {
    throw UsageError("optimizer: fidelity_target must lie in (0, 1]");
  }
  if (!(config.gradient_tolerance >= 0.0)) {
    throw UsageError("optimizer: gradient_tolerance must be >= 0");
  }
  if (config.memory_pairs == 0) {
    throw UsageError("optimizer: memory_pairs must be >= 1");
  }
  if (!(config.init_scale >= 0.0 && config.init_scale <= 1.0)) {
    throw UsageError("optimizer: init_scale must lie in [0, 1]");
  }
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::kFidelityTarget: return "fidelity_target";
    case StopReason::kGradientTolerance: return "gradient_tolerance";
    case StopReason::kMaxIterations: return "max_iterations";
    case StopReason::kLineSearchFailure: return "line_search_failure";
  }
  return "unknown";
}

ComplexMatrix embed_target(const GateSpec& gate, std::size_t dim) {
  const std::size_t d = gate.subspace_dim;
  if (gate.target.dim() != d) throw UsageError("gate target does not match subspace_dim");
  if (dim < d) {
    throw UsageError("propagator dimension " + std::to_string(dim) +
                     " is smaller than the gate subspace " + std::to_string(d));
  }
  ComplexMatrix w(dim);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) w(i, j) = gate.target(i, j);
  }
  return w;
}

namespace {

Complex subspace_overlap(const ComplexMatrix& u, const GateSpec& gate) {
  return trace_inner(embed_target(gate, u.dim()), u);
}

double normalization(const GateSpec& gate) {
  const double d = static_cast<double>(gate.subspace_dim);
  return 1.0 / (d * d);
}

}  // namespace

double gate_fidelity(const ComplexMatrix& u_final, const GateSpec& gate) {
  return std::norm(subspace_overlap(u_final, gate)) * normalization(gate);
}

FidelityGradient fidelity_gradient(const ComplexMatrix& drift,
                                   const ComplexMatrix& h_i,
                                   const ComplexMatrix& h_q,
                                   const PulseSequence& pulse,
                                   const GateSpec& gate) {
  if (h_i.dim() != drift.dim() || h_q.dim() != drift.dim()) {
    throw UsageError("control Hamiltonians do not match the drift dimension");
  }
  const std::size_t n = pulse.n_slices();
  const std::size_t dim = drift.dim();
  const double scale = -pulse.dt();

  std::vector<ComplexMatrix> u;
  std::vector<ComplexMatrix> d_i;
  std::vector<ComplexMatrix> d_q;
  u.reserve(n);
  d_i.reserve(n);
  d_q.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const HermitianEigen eig = eigh(slice_hamiltonian(
        drift, h_i, h_q, pulse.amps_i()[k], pulse.amps_q()[k]));
    u.push_back(herm_expm(eig, scale));
    d_i.push_back(expm_frechet_derivative(eig, h_i, scale));
    d_q.push_back(expm_frechet_derivative(eig, h_q, scale));
  }

  // forward[k] = U_k ... U_1 (forward[0] = I); backward[k] = U_N ... U_{k+1}.
  std::vector<ComplexMatrix> forward(n + 1, ComplexMatrix::identity(dim));
  for (std::size_t k = 0; k < n; ++k) forward[k + 1] = u[k] * forward[k];
  std::vector<ComplexMatrix> backward(n + 1, ComplexMatrix::identity(dim));
  for (std::size_t k = n; k-- > 0;) backward[k] = backward[k + 1] * u[k];

  const ComplexMatrix w_dag = adjoint(embed_target(gate, dim));
  const Complex g = trace(w_dag * forward[n]);
  const double norm = normalization(gate);

  FidelityGradient out{std::vector<double>(n), std::vector<double>(n),
                       std::norm(g) * norm};
  for (std::size_t k = 0; k < n; ++k) {
    // d g / d Omega_k = Tr(W^dag Q_k D_k P_{k-1}) = Tr(X_k D_k).
    const ComplexMatrix x = forward[k] * w_dag * backward[k + 1];
    Complex dg_i{};
    Complex dg_q{};
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        dg_i += x(a, b) * d_i[k](b, a);
        dg_q += x(a, b) * d_q[k](b, a);
      }
    }
    out.grads_i[k] = 2.0 * norm * (std::conj(g) * dg_i).real();
    out.grads_q[k] = 2.0 * norm * (std::conj(g) * dg_q).real();
  }
  return out;
}

PulseSequence random_initial_pulse(const OptimizerConfig& config) {
  if (config.n_slices < 1) throw UsageError("optimizer: n_slices must be >= 1");
  // Raw mt19937_64 output is specified bit-for-bit; distributions are not.
  std::mt19937_64 rng(config.seed);
  const double half_width = config.init_scale * config.amplitude_bound;
  auto draw = [&] {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return half_width * (2.0 * unit - 1.0);
  };
  std::vector<double> amps_i(config.n_slices);
  std::vector<double> amps_q(config.n_slices);
  for (auto& a : amps_i) a = draw();
  for (auto& a : amps_q) a = draw();
  return PulseSequence(config.duration_ns, std::move(amps_i), std::move(amps_q));
}

namespace {

// Minimization of 1 - F over x = [amps_i..., amps_q...].
class FidelityObjective {
 public:
  FidelityObjective(const ComplexMatrix& drift, const ComplexMatrix& h_i,
                    const ComplexMatrix& h_q, const GateSpec& gate,
                    double duration)
      : drift_(drift), h_i_(h_i), h_q_(h_q), gate_(gate), duration_(duration) {}

  struct Value {
    double loss;
    double fidelity;
    std::vector<double> grad;
  };

  PulseSequence to_pulse(const std::vector<double>& x) const {
    const std::size_t n = x.size() / 2;
    return PulseSequence(duration_, {x.begin(), x.begin() + n},
                         {x.begin() + n, x.end()});
  }

  Value operator()(const std::vector<double>& x) const {
    const FidelityGradient fg =
        fidelity_gradient(drift_, h_i_, h_q_, to_pulse(x), gate_);
    Value v{1.0 - fg.fidelity, fg.fidelity, std::vector<double>(x.size())};
    const std::size_t n = fg.grads_i.size();
    for (std::size_t k = 0; k < n; ++k) {
      v.grad[k] = -fg.grads_i[k];
      v.grad[n + k] = -fg.grads_q[k];
    }
    return v;
  }

 private:
  const ComplexMatrix& drift_;
  const ComplexMatrix& h_i_;
  const ComplexMatrix& h_q_;
  const GateSpec& gate_;
  double duration_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;  // 1 / (y . s)
};

class BoxProjection {
 public:
  explicit BoxProjection(double bound) : bound_(bound) {}

  double clamp(double v) const { return std::clamp(v, -bound_, bound_); }

  void project(std::vector<double>& x) const {
    for (auto& v : x) v = clamp(v);
  }

  // A coordinate is held fixed when it sits on a face and the descent
  // direction -g points out of the box.
  bool is_active(double x, double g) const {
    return (x <= -bound_ && g > 0.0) || (x >= bound_ && g < 0.0);
  }

  double projected_gradient_norm(const std::vector<double>& x,
                                 const std::vector<double>& g) const {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      m = std::max(m, std::abs(clamp(x[i] - g[i]) - x[i]));
    }
    return m;
  }

 private:
  double bound_;
};

// Two-loop recursion on the free coordinates.
std::vector<double> lbfgs_direction(const std::deque<CurvaturePair>& memory,
                                    const std::vector<double>& grad,
                                    const std::vector<bool>& active) {
  std::vector<double> q = grad;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (active[i]) q[i] = 0.0;
  }
  std::vector<double> alpha(memory.size());
  for (std::size_t j = memory.size(); j-- > 0;) {
    const auto& p = memory[j];
    alpha[j] = p.rho * dot(p.s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[j] * p.y[i];
  }
  if (!memory.empty()) {
    const auto& last = memory.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (auto& v : q) v *= gamma;
  }
  for (std::size_t j = 0; j < memory.size(); ++j) {
    const auto& p = memory[j];
    const double beta = p.rho * dot(p.y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[j] - beta) * p.s[i];
  }
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = active[i] ? 0.0 : -q[i];
  return q;
}

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

}  // namespace

OptimizationResult optimize(const ComplexMatrix& drift,
                            const ComplexMatrix& h_i,
                            const ComplexMatrix& h_q, const GateSpec& gate,
                            const std::optional<PulseSequence>& initial,
                            const OptimizerConfig& config) {
  validate(config);
  const PulseSequence start = initial ? *initial : random_initial_pulse(config);
  const FidelityObjective objective(drift, h_i, h_q, gate, start.duration());
  const BoxProjection box(config.amplitude_bound);

  std::vector<double> x = start.amps_i();
  x.insert(x.end(), start.amps_q().begin(), start.amps_q().end());
  box.project(x);
  FidelityObjective::Value current = objective(x);

  OptimizationResult result{
      objective.to_pulse(x), {current.fidelity}, current.fidelity, 0, false,
      box.projected_gradient_norm(x, current.grad), StopReason::kMaxIterations,
      config, Provenance{config.seed, {}, utc_timestamp(), tool_version()}};

  std::deque<CurvaturePair> memory;
  std::size_t iteration = 0;
  bool stopped = config.max_iterations == 0;
  while (!stopped) {
    const double pg_norm = box.projected_gradient_norm(x, current.grad);
    if (current.fidelity >= config.fidelity_target) {
      result.stop_reason = StopReason::kFidelityTarget;
      break;
    }
    if (pg_norm <= config.gradient_tolerance) {
      result.stop_reason = StopReason::kGradientTolerance;
      break;
    }
    if (iteration >= config.max_iterations) {
      result.stop_reason = StopReason::kMaxIterations;
      break;
    }

    std::vector<bool> active(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      active[i] = box.is_active(x[i], current.grad[i]);
    }
    std::vector<double> direction = lbfgs_direction(memory, current.grad, active);
    if (!memory.empty() && dot(direction, current.grad) >= 0.0) {
      memory.clear();
      direction = lbfgs_direction(memory, current.grad, active);
    }

    double step = 1.0;
    if (memory.empty()) {
      double dmax = 0.0;
      for (double v : direction) dmax = std::max(dmax, std::abs(v));
      if (dmax > 0.0) step = std::min(1.0, config.amplitude_bound / dmax);
    }

    bool accepted = false;
    std::vector<double> trial(x.size());
    FidelityObjective::Value next{};
    for (int attempt = 0; attempt < kMaxBacktracks; ++attempt, step *= 0.5) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        trial[i] = box.clamp(x[i] + step * direction[i]);
      }
      double decrease = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        decrease += current.grad[i] * (trial[i] - x[i]);
      }
      if (decrease >= 0.0) continue;
      next = objective(trial);
      if (next.loss <= current.loss + kArmijo * decrease) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (!memory.empty()) {
        memory.clear();
        continue;
      }
      result.stop_reason = StopReason::kLineSearchFailure;
      break;
    }

    CurvaturePair pair{std::vector<double>(x.size()),
                       std::vector<double>(x.size()), 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
      pair.s[i] = trial[i] - x[i];
      pair.y[i] = next.grad[i] - current.grad[i];
    }
    const double sy = dot(pair.s, pair.y);
    // Skip pairs without positive curvature.
    if (sy > 1e-12 * dot(pair.y, pair.y) && sy > 0.0) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > config.memory_pairs) memory.pop_front();
    }

    x = trial;
    current = std::move(next);
    ++iteration;
    result.fidelity_history.push_back(
        std::max(result.fidelity_history.back(), current.fidelity));
  }

  result.pulse = objective.to_pulse(x);
  result.final_fidelity = std::clamp(current.fidelity, 0.0, 1.0);
  result.iterations_used = iteration;
  result.final_gradient_norm = box.projected_gradient_norm(x, current.grad);
  result.converged =
      config.max_iterations > 0 && current.fidelity >= config.fidelity_target;
  return result;
}

std::string_view to_string(EvaluationMode mode) noexcept {
  return mode == EvaluationMode::kClosed ? "closed" : "open";
}

EvaluationMode parse_evaluation_mode(std::string_view text) {
  if (text == "closed") return EvaluationMode::kClosed;
  if (text == "open") return EvaluationMode::kOpen;
  throw UsageError("unknown mode '" + std::string(text) +
                   "' (expected closed or open)");
}

ComplexMatrix project_superoperator(const ComplexMatrix& super, std::size_t dim,
                                    std::size_t subspace_dim) {
  if (super.dim() != dim * dim) {
    throw UsageError("project_superoperator: superoperator is not dim^2 x dim^2");
  }
  if (subspace_dim > dim) throw UsageError("project_superoperator: subspace too large");
  const std::size_t s = subspace_dim;
  ComplexMatrix out(s * s);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t l = 0; l < s; ++l) {
        for (std::size_t k = 0; k < s; ++k) {
          out(j * s + i, l * s + k) = super(j * dim + i, l * dim + k);
        }
      }
    }
  }
  return out;
}

double process_fidelity(const ComplexMatrix& super, std::size_t dim,
                        const GateSpec& gate) {
  const ComplexMatrix target =
      kron(conjugate(gate.target), gate.target);
  const ComplexMatrix projected =
      project_superoperator(super, dim, gate.subspace_dim);
  return trace_inner(target, projected).real() * normalization(gate);
}

double evaluate_pulse(const LindbladModel& model, const PulseSequence& pulse,
                      const GateSpec& gate, EvaluationMode mode) {
  validate(model);
  if (mode == EvaluationMode::kClosed) {
    return gate_fidelity(
        propagate_unitary(model.drift, model.h_i, model.h_q, pulse).final_unitary,
        gate);
  }
  return process_fidelity(channel_superoperator(model, pulse), model.dim(), gate);
}

}  // namespace pulseforge
