// Copyright 2026 The ctcsim Authors
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

// Serial reference versus OpenMP kernels. Each benchmark takes the number of
// qubits as its argument; the "Serial" and "Parallel" variants run the same
// workload.

#include <benchmark/benchmark.h>

#include "ctc/cross_sim.hpp"
#include "ctc/kernels.hpp"
#include "ctc/models.hpp"

namespace {

using ctc::ComplexMatrix;
using ctc::Dims;

ComplexMatrix random_density_of(std::size_t qubits, std::uint64_t seed) {
  ctc::Rng rng(seed);
  return ctc::random_density(std::size_t{1} << qubits, rng).matrix();
}

template <ctc::kernels::Execution E>
void BM_Kron(benchmark::State& state) {
  const auto half = static_cast<std::size_t>(state.range(0)) / 2;
  const ComplexMatrix a = random_density_of(half, 1);
  const ComplexMatrix b = random_density_of(half, 2);
  for (auto _ : state) {
    ComplexMatrix k = E == ctc::kernels::Execution::serial ? ctc::kernels::serial::kron(a, b)
                                                           : ctc::kernels::parallel::kron(a, b);
    benchmark::DoNotOptimize(k.data());
  }
}

template <ctc::kernels::Execution E>
void BM_PartialTrace(benchmark::State& state) {
  const auto qubits = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix m = random_density_of(qubits, 3);
  const Dims dims(qubits, 2);
  const std::vector<std::size_t> keep{0, qubits - 1};
  for (auto _ : state) {
    ComplexMatrix r = E == ctc::kernels::Execution::serial
                          ? ctc::kernels::serial::partial_trace(m, dims, keep)
                          : ctc::kernels::parallel::partial_trace(m, dims, keep);
    benchmark::DoNotOptimize(r.data());
  }
}

template <ctc::kernels::Execution E>
void BM_ConjugateLocal(benchmark::State& state) {
  const auto qubits = static_cast<std::size_t>(state.range(0));
  ComplexMatrix rho = random_density_of(qubits, 4);
  ctc::Rng rng(5);
  const ComplexMatrix op = ctc::haar_unitary(4, rng);
  const Dims dims(qubits, 2);
  const std::vector<std::size_t> targets{1, qubits - 1};
  for (auto _ : state) {
    if constexpr (E == ctc::kernels::Execution::serial)
      ctc::kernels::serial::conjugate_local(rho, dims, targets, op);
    else
      ctc::kernels::parallel::conjugate_local(rho, dims, targets, op);
    benchmark::DoNotOptimize(rho.data());
  }
}

template <ctc::kernels::Execution E>
void BM_MonteCarlo(benchmark::State& state) {
  ctc::Rng rng(6);
  const ctc::BipartiteUnitary u(ctc::haar_unitary(4, rng), 2, 2);
  const ctc::PureState psi = ctc::haar_state(2, rng);
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const ctc::MonteCarloEstimate est = ctc::tctc_monte_carlo(u, psi, samples, ctc::Rng(7), E);
    benchmark::DoNotOptimize(est.weight_sum);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples));
}

template <ctc::kernels::Execution E>
void BM_FullVectorCircuit(benchmark::State& state) {
  ctc::Rng rng(8);
  const ctc::BipartiteUnitary u(ctc::haar_unitary(4, rng), 2, 2);
  const ctc::DensityMatrix rho = ctc::random_density(2, rng);
  const ctc::DensityMatrix omega0 = ctc::random_density(2, rng);
  const auto n = static_cast<std::size_t>(state.range(0));
  const ctc::ControlState control = ctc::make_control_state(ctc::ControlKind::dicke, n);
  const ctc::CircuitOptions options{ctc::CircuitMethod::full_vector,
                                    ctc::CircuitMode::adopted, 4096, E};
  for (auto _ : state) {
    const ctc::DctcSimReport r = ctc::dctc_circuit_simulate(u, rho, omega0, control, options);
    benchmark::DoNotOptimize(r.dist_formula);
  }
}

constexpr auto kSerial = ctc::kernels::Execution::serial;
constexpr auto kParallel = ctc::kernels::Execution::parallel;

BENCHMARK(BM_Kron<kSerial>)->Name("Kron/Serial")->DenseRange(6, 10, 2);
BENCHMARK(BM_Kron<kParallel>)->Name("Kron/Parallel")->DenseRange(6, 10, 2);
BENCHMARK(BM_PartialTrace<kSerial>)->Name("PartialTrace/Serial")->DenseRange(6, 10, 2);
BENCHMARK(BM_PartialTrace<kParallel>)->Name("PartialTrace/Parallel")->DenseRange(6, 10, 2);
BENCHMARK(BM_ConjugateLocal<kSerial>)->Name("ConjugateLocal/Serial")->DenseRange(6, 10, 2);
BENCHMARK(BM_ConjugateLocal<kParallel>)->Name("ConjugateLocal/Parallel")->DenseRange(6, 10, 2);
BENCHMARK(BM_MonteCarlo<kSerial>)->Name("MonteCarlo/Serial")->Arg(1 << 14);
BENCHMARK(BM_MonteCarlo<kParallel>)->Name("MonteCarlo/Parallel")->Arg(1 << 14);
BENCHMARK(BM_FullVectorCircuit<kSerial>)->Name("FullVectorCircuit/Serial")->DenseRange(2, 4);
BENCHMARK(BM_FullVectorCircuit<kParallel>)->Name("FullVectorCircuit/Parallel")->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
