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

#include "ctc/errors.hpp"
#include "ctc/kernels.hpp"
#include "test_support.hpp"

namespace ctc {
namespace test_kernels {

static double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

SCENARIO("Serial and parallel kernels agree with the index oracles") {
  Rng rng(2024);

  GIVEN("kron on assorted shapes") {
    for (int trial = 0; trial < 6; ++trial) {
      const ComplexMatrix a = test::gaussian_matrix(1 + trial, 2 + trial % 2, rng);
      const ComplexMatrix b = test::gaussian_matrix(3, 1 + trial % 3, rng);
      const ComplexMatrix ref = test::oracle_kron(a, b);
      CHECK(max_abs(kernels::serial::kron(a, b) - ref) == 0.0);
      CHECK(max_abs(kernels::parallel::kron(a, b) - ref) == 0.0);
    }
  }

  GIVEN("partial_trace on four subsystems") {
    const Dims dims{2, 3, 2, 2};
    const ComplexMatrix m = test::gaussian_matrix(24, 24, rng);
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {3}, {1, 2}, {0, 3}, {0, 1, 3}}) {
      const ComplexMatrix ref = test::oracle_partial_trace(m, dims, keep);
      const ComplexMatrix s = kernels::serial::partial_trace(m, dims, keep);
      const ComplexMatrix p = kernels::parallel::partial_trace(m, dims, keep);
      CHECK(max_abs(s - ref) < 1e-13);
      CHECK(max_abs(p - s) == 0.0);
    }
  }

  GIVEN("Local conjugation with targets in arbitrary order") {
    const Dims dims{2, 3, 2, 2};
    const ComplexMatrix rho = test::gaussian_matrix(24, 24, rng);
    for (const std::vector<std::size_t>& targets :
         {std::vector<std::size_t>{1}, {3, 0}, {0, 2, 3}, {2, 1}}) {
      std::size_t local = 1;
      for (std::size_t t : targets) local *= dims[t];
      const ComplexMatrix op = test::gaussian_matrix(local, local, rng);
      const ComplexMatrix e = test::oracle_embed(op, dims, targets);
      const ComplexMatrix ref = e * rho * e.adjoint();

      ComplexMatrix s = rho, p = rho;
      kernels::serial::conjugate_local(s, dims, targets, op);
      kernels::parallel::conjugate_local(p, dims, targets, op);
      CHECK(max_abs(s - ref) < 1e-12);
      CHECK(max_abs(p - s) == 0.0);

      ComplexMatrix l = rho;
      kernels::parallel::left_apply_local(l, dims, targets, op);
      CHECK(max_abs(l - e * rho) < 1e-12);
      CHECK(max_abs(kernels::embed_operator(op, dims, targets) - e) == 0.0);
    }
  }

  GIVEN("Bad targets") {
    const Dims dims{2, 2};
    ComplexMatrix m = identity(4);
    const std::size_t out_of_range[] = {2}, repeated[] = {0, 0}, ok[] = {0};
    REQUIRE_THROWS_AS(kernels::serial::left_apply_local(m, dims, out_of_range, identity(2)),
                      DimensionMismatch);
    REQUIRE_THROWS_AS(kernels::serial::left_apply_local(m, dims, repeated, identity(4)),
                      InvalidArgument);
    REQUIRE_THROWS_AS(kernels::parallel::left_apply_local(m, dims, ok, identity(3)),
                      DimensionMismatch);
  }
}

SCENARIO("Strides and index maps") {
  const Dims dims{2, 3, 4};
  CHECK(kernels::strides_of(dims) == Dims{12, 4, 1});
  const std::size_t targets[] = {2, 0};
  const kernels::LocalIndexMap map = kernels::local_index_map(dims, targets);
  REQUIRE(map.local.size() == 8);
  REQUIRE(map.rest.size() == 3);
  // First listed target is most significant: local index 1 is (t2=0, t0=1)
  // and local index 4 is (t2=2, t0=0).
  CHECK(map.local[1] == 12);
  CHECK(map.local[4] == 2);
  CHECK(map.rest[2] == 8);
  CHECK(kernels::max_threads() >= 1);
}

}  // namespace test_kernels
}  // namespace ctc
