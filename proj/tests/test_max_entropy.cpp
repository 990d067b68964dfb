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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ctc/blocks.hpp"
#include "ctc/max_entropy.hpp"
#include "test_support.hpp"

namespace ctc {
namespace test_max_entropy {

SCENARIO("Maximum-entropy fixed points of simple channels") {
  GIVEN("The identity channel") {
    const DensityMatrix s = max_entropy_fixed_point(QuantumChannel::identity(3));
    CHECK(trace_distance(s, DensityMatrix::maximally_mixed(3)) < 1e-8);
  }
  GIVEN("Conjugation by X") {
    const MaxEntropyResult r = solve_max_entropy(QuantumChannel::unitary(pauli_x()));
    CHECK(trace_distance(r.state, DensityMatrix::maximally_mixed(2)) < 1e-8);
    CHECK(r.entropy == Catch::Approx(1.0).margin(1e-9));
  }
  GIVEN("A constant channel") {
    Rng rng(30);
    const DensityMatrix rho = random_density(3, rng);
    CHECK(trace_distance(max_entropy_fixed_point(QuantumChannel::constant(rho)), rho) < 1e-9);
  }
  GIVEN("A one-dimensional block next to a two-dimensional one") {
    const std::vector<BlockSpec> spec{{1, DensityMatrix::basis_state(1, 0)},
                                      {2, DensityMatrix::basis_state(1, 0)}};
    const DensityMatrix s = max_entropy_fixed_point(block_structured_channel(spec, identity(3)));
    CHECK(trace_distance(s, DensityMatrix::maximally_mixed(3)) < 1e-8);
  }
}

SCENARIO("Maximum-entropy fixed points match the block closed form") {
  Rng rng(31);
  const std::vector<std::vector<std::pair<std::size_t, std::size_t>>> layouts{
      {{1, 2}, {2, 1}},
      {{1, 1}, {1, 3}},
      {{2, 1}, {1, 2}},
      {{1, 2}, {1, 2}},
      {{1, 1}, {1, 1}, {2, 1}},
  };
  for (int trial = 0; trial < 10; ++trial) {
    const auto& layout = layouts[static_cast<std::size_t>(trial) % layouts.size()];
    std::vector<BlockSpec> spec;
    std::size_t d = 0;
    for (const auto& [dl, dr] : layout) {
      spec.push_back({dl, random_density(dr, rng)});
      d += dl * dr;
    }
    const ComplexMatrix basis = test::oracle_haar_unitary(d, rng);
    const QuantumChannel ch = block_structured_channel(spec, basis, 0.5);
    const MaxEntropyResult r = solve_max_entropy(ch);
    const ComplexMatrix want = test::oracle_block_max_entropy(spec, basis);
    CHECK(test::oracle_trace_distance(r.state.matrix(), want) < 1e-7);
    CHECK(r.entropy == Catch::Approx(test::oracle_entropy(want)).margin(1e-8));

    const BlockDecomposition dec = detect_blocks(ch, 77 + static_cast<std::uint64_t>(trial));
    CHECK(trace_distance(dec.max_entropy_state(), r.state) < 1e-7);
  }
}

SCENARIO("The maximum-entropy state dominates other fixed states") {
  Rng rng(32);
  for (const test::Case& c : test::random_suite(50, 33)) {
    const QuantumChannel ch = induced_channel(c.u, c.rho);
    const MaxEntropyResult r = solve_max_entropy(ch);
    CHECK(verify_consistency(ch, r.state) < 1e-8);
    CHECK(r.entropy == Catch::Approx(test::oracle_entropy(r.state.matrix())).margin(1e-9));
    const FixedPointProjector projector(ch);
    double worst = INFINITY;
    for (int k = 0; k < 100; ++k) {
      const DensityMatrix other = projector.apply(random_density(ch.d(), rng));
      worst = std::min(worst, r.entropy - von_neumann_entropy(other));
    }
    CHECK(worst >= -1e-7);
  }
}

}  // namespace test_max_entropy
}  // namespace ctc
