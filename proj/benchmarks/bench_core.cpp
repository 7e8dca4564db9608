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

#include <benchmark/benchmark.h>

#include <random>

#include "pulseforge/pulseforge.hpp"

namespace {

using pulseforge::ComplexMatrix;

ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = u(rng);
    for (std::size_t j = i + 1; j < dim; ++j) {
      m(i, j) = {u(rng), u(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

void BM_HermExpm(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(pulseforge::herm_expm(h, -0.2));
}
BENCHMARK(BM_HermExpm)->Arg(2)->Arg(3)->Arg(9);

void BM_GeneralExpm(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), 2);
  const ComplexMatrix m = h * pulseforge::Complex{-0.01, -1.0};
  for (auto _ : state) benchmark::DoNotOptimize(pulseforge::general_expm(m));
}
BENCHMARK(BM_GeneralExpm)->Arg(4)->Arg(9);

void BM_ExpmFrechet(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(3, 3);
  const ComplexMatrix v = random_hermitian(3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(pulseforge::expm_frechet(h, v, -0.2));
}
BENCHMARK(BM_ExpmFrechet);

struct Twin {
  pulseforge::LindbladModel model =
      pulseforge::build_twin(pulseforge::representative_garnet(), 3,
                             pulseforge::Frame::kRotating);
  pulseforge::GateSpec gate = pulseforge::standard_gate("X");
};

void BM_FidelityGradient(benchmark::State& state) {
  const Twin twin;
  pulseforge::OptimizerConfig config;
  config.n_slices = static_cast<std::size_t>(state.range(0));
  const pulseforge::PulseSequence pulse = pulseforge::random_initial_pulse(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pulseforge::fidelity_gradient(
        twin.model.drift, twin.model.h_i, twin.model.h_q, pulse, twin.gate));
  }
}
BENCHMARK(BM_FidelityGradient)->Arg(100)->Arg(400);

void BM_OptimizeX(benchmark::State& state) {
  const Twin twin;
  const pulseforge::OptimizerConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pulseforge::optimize(twin.model.drift, twin.model.h_i,
                                                  twin.model.h_q, twin.gate,
                                                  std::nullopt, config));
  }
}
BENCHMARK(BM_OptimizeX)->Unit(benchmark::kMillisecond);

void BM_ChannelSuperoperator(benchmark::State& state) {
  const Twin twin;
  const pulseforge::PulseSequence pulse =
      pulseforge::gaussian_pulse(20.0, 100, 20.0 / 6.0, 3.141592653589793);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pulseforge::channel_superoperator(twin.model, pulse));
  }
}
BENCHMARK(BM_ChannelSuperoperator)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
