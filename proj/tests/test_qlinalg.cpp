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
#include "ctc/qlinalg.hpp"
#include "test_support.hpp"

namespace ctc {
namespace test_qlinalg {

using test::oracle_kron;
using test::oracle_partial_trace;

static double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

SCENARIO("Kronecker products") {
  GIVEN("Two identities") {
    REQUIRE(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);
  }
  GIVEN("A projector and X") {
    const ComplexMatrix k = kron(test::diag2(1, 0), pauli_x());
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.block(0, 0, 2, 2) = pauli_x();
    REQUIRE(max_abs(k - expected) == 0.0);
  }
  GIVEN("Random rectangular factors") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix a = test::gaussian_matrix(2 + trial % 3, 3, rng);
      const ComplexMatrix b = test::gaussian_matrix(3, 1 + trial % 4, rng);
      CHECK(max_abs(kron(a, b) - oracle_kron(a, b)) < 1e-15);
    }
  }
  GIVEN("Vectors") {
    const ComplexVector a = ComplexVector::LinSpaced(3, 1.0, 3.0);
    const ComplexVector b = ComplexVector::LinSpaced(2, 1.0, 2.0);
    const ComplexVector k = kron(a, b);
    REQUIRE(k.size() == 6);
    CHECK(k(3) == Complex(2.0 * 2.0, 0.0));
  }
}

SCENARIO("Partial traces") {
  GIVEN("SWAP on two qubits") {
    const std::size_t dims[] = {2, 2}, keep[] = {0};
    REQUIRE(max_abs(partial_trace(swap_gate(2), dims, keep) - identity(2)) < 1e-15);
  }
  GIVEN("A product state") {
    Rng rng(3);
    const DensityMatrix r = random_density(3, rng), s = random_density(2, rng);
    const std::size_t dims[] = {3, 2}, keep[] = {0};
    CHECK(max_abs(partial_trace(kron(r.matrix(), s.matrix()), dims, keep) - r.matrix()) <
          1e-15);
  }
  GIVEN("I (x) X") {
    const std::size_t dims[] = {2, 2}, keep[] = {0};
    REQUIRE(max_abs(partial_trace(kron(identity(2), pauli_x()), dims, keep)) == 0.0);
  }
  GIVEN("Random matrices on three factors") {
    Rng rng(5);
    const Dims dims{2, 3, 2};
    const ComplexMatrix m = test::gaussian_matrix(12, 12, rng);
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
      CHECK(max_abs(partial_trace(m, dims, keep) - oracle_partial_trace(m, dims, keep)) <
            1e-13);
    }
  }
  GIVEN("Mismatched dimensions") {
    const std::size_t dims[] = {2, 3}, keep[] = {0};
    REQUIRE_THROWS_AS(partial_trace(identity(4), dims, keep), DimensionMismatch);
  }
  GIVEN("The density-matrix overload") {
    const DensityMatrix rho(kron(test::diag2(1, 0), test::diag2(0.5, 0.5)), Dims{2, 2});
    const std::size_t keep[] = {1};
    const DensityMatrix r = partial_trace(rho, keep);
    CHECK(r.dims() == Dims{2});
    CHECK(max_abs(r.matrix() - test::diag2(0.5, 0.5)) < 1e-15);
  }
}

SCENARIO("Partial trace of a product is the scaled first factor") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t da = 1 + trial % 4, db = 1 + (trial / 4) % 3;
    const ComplexMatrix a = test::gaussian_matrix(da, da, rng);
    const ComplexMatrix b = test::gaussian_matrix(db, db, rng);
    const std::size_t dims[] = {da, db}, keep[] = {0};
    CHECK(max_abs(partial_trace(kron(a, b), dims, keep) - a * b.trace()) < 1e-12);
  }
}

SCENARIO("Maximally entangled states") {
  GIVEN("d = 1") {
    const PureState phi = max_entangled(1);
    REQUIRE(phi.dim() == 1);
    CHECK(std::abs(phi.vector()(0) - Complex(1.0, 0.0)) == 0.0);
  }
  GIVEN("d = 2") {
    const PureState phi = max_entangled(2);
    ComplexVector expected = ComplexVector::Zero(4);
    expected(0) = expected(3) = 1.0 / std::sqrt(2.0);
    CHECK((phi.vector() - expected).norm() < 1e-15);
    CHECK(phi.dims() == Dims{2, 2});
  }
  GIVEN("Either reduced state") {
    for (std::size_t d = 1; d <= 4; ++d) {
      const DensityMatrix p = max_entangled(d).projector();
      const std::size_t k0[] = {0}, k1[] = {1};
      const ComplexMatrix pi = identity(d) / static_cast<double>(d);
      CHECK(max_abs(partial_trace(p, k0).matrix() - pi) < 1e-15);
      CHECK(max_abs(partial_trace(p, k1).matrix() - pi) < 1e-15);
    }
  }
  GIVEN("d = 0") { REQUIRE_THROWS_AS(max_entangled(0), InvalidArgument); }
}

SCENARIO("Trace distance") {
  const DensityMatrix zero = DensityMatrix::basis_state(2, 0);
  const DensityMatrix one = DensityMatrix::basis_state(2, 1);
  const DensityMatrix pi = DensityMatrix::maximally_mixed(2);
  CHECK(trace_distance(zero, zero) == 0.0);
  CHECK(trace_distance(zero, one) == Catch::Approx(1.0).margin(1e-15));
  CHECK(trace_distance(zero, pi) == Catch::Approx(0.5).margin(1e-15));
  REQUIRE_THROWS_AS(trace_distance(zero, DensityMatrix::maximally_mixed(3)),
                    DimensionMismatch);

  GIVEN("Random triples") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 2 + trial % 3;
      const DensityMatrix a = random_density(d, rng), b = random_density(d, rng),
                          c = random_density(d, rng);
      const double ab = trace_distance(a, b), bc = trace_distance(b, c),
                   ac = trace_distance(a, c);
      CHECK(ac <= ab + bc + 1e-12);
      CHECK(std::abs(ab - trace_distance(b, a)) < 1e-14);
      CHECK(std::abs(ab - test::oracle_trace_distance(a.matrix(), b.matrix())) < 1e-12);
    }
  }
}

SCENARIO("Von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityMatrix::basis_state(3, 1)) == Catch::Approx(0.0).margin(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) == Catch::Approx(1.0).margin(1e-14));
  const double expected = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  CHECK(von_neumann_entropy(DensityMatrix(test::diag2(0.75, 0.25))) ==
        Catch::Approx(expected).margin(1e-14));
  CHECK(expected == Catch::Approx(0.811278).margin(1e-6));

  GIVEN("Conjugation by Haar unitaries") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + trial % 4;
      const DensityMatrix rho = random_density(d, rng);
      const ComplexMatrix v = haar_unitary(d, rng);
      const DensityMatrix rotated =
          DensityMatrix::normalized(v * rho.matrix() * v.adjoint(), Dims{d});
      CHECK(std::abs(von_neumann_entropy(rho) - von_neumann_entropy(rotated)) < 1e-9);
      CHECK(std::abs(von_neumann_entropy(rho) - test::oracle_entropy(rho.matrix())) < 1e-12);
    }
  }
}

SCENARIO("Haar-random states") {
  GIVEN("d = 1") {
    Rng rng(1);
    for (int i = 0; i < 10; ++i)
      CHECK(std::abs(std::abs(haar_state(1, rng).vector()(0)) - 1.0) < 1e-15);
  }
  GIVEN("First moment at d = 2") {
    Rng rng(2);
    const int samples = 100000;
    double mean = 0.0;
    for (int i = 0; i < samples; ++i) {
      const PureState phi = haar_state(2, rng);
      CHECK(std::abs(phi.vector().norm() - 1.0) < 1e-12);
      mean += std::norm(phi.vector()(0));
    }
    mean /= samples;
    CHECK(std::abs(mean - 0.5) < 0.01);
  }
  GIVEN("Isotropy at d = 3") {
    Rng rng(3);
    const int samples = 100000;
    ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(3, 3);
    for (int i = 0; i < samples; ++i) {
      const ComplexVector v = haar_state(3, rng).vector();
      const ComplexMatrix p = v * v.adjoint();
      sum += p;
      sum_sq += p.cwiseAbs2();
    }
    const ComplexMatrix mean = sum / samples;
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j < 3; ++j) {
        const double target = i == j ? 1.0 / 3.0 : 0.0;
        const double var = sum_sq(i, j) / samples - std::norm(mean(i, j));
        const double se = std::sqrt(std::max(var, 0.0) / samples);
        CHECK(std::abs(mean(i, j) - target) <= 3.0 * se + 1e-12);
      }
  }
}

SCENARIO("Random density matrices are reduced Haar states") {
  for (std::size_t d : {1u, 2u, 3u, 5u}) {
    Rng a(90 + d), b(90 + d);
    const DensityMatrix rho = random_density(d, a);
    const ComplexVector v = haar_state(d * d, b).vector();
    const ComplexMatrix want = test::oracle_partial_trace(v * v.adjoint(), {d, d}, {0});
    CHECK((rho.matrix() - want).cwiseAbs().maxCoeff() < 1e-14);
  }
  GIVEN("A large dimension") {
    Rng rng(95);
    const DensityMatrix rho = random_density(256, rng);
    CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-12);
  }
}

SCENARIO("State validation") {
  ComplexMatrix m = test::diag2(0.5, 0.5);
  m(0, 1) = 0.1;
  REQUIRE_THROWS_AS(DensityMatrix(m), InvalidState);
  REQUIRE_THROWS_AS(DensityMatrix(test::diag2(0.6, 0.5)), InvalidState);
  REQUIRE_THROWS_AS(DensityMatrix(test::diag2(1.1, -0.1)), InvalidState);
  REQUIRE_THROWS_AS(DensityMatrix(identity(4) / 4.0, Dims{2, 3}), DimensionMismatch);
  REQUIRE_NOTHROW(DensityMatrix(test::diag2(1.0 + 5e-11, -5e-11)));
  ComplexVector v = ComplexVector::Zero(2);
  v(0) = 1.0 + 1e-9;
  REQUIRE_THROWS_AS(PureState(v), InvalidState);
  REQUIRE_NOTHROW(PureState::normalized(v, Dims{2}));
}

SCENARIO("Plumbing") {
  Rng rng(21);
  GIVEN("Haar unitaries") {
    for (std::size_t d = 1; d <= 6; ++d) CHECK(is_unitary(haar_unitary(d, rng)));
    Rng a(99), b(99);
    CHECK(max_abs(haar_unitary(4, a) - haar_unitary(4, b)) == 0.0);
  }
  GIVEN("Hermitian eigendecomposition") {
    const DensityMatrix rho = random_density(4, rng);
    const HermitianEigen e = eigh(rho.matrix());
    for (Eigen::Index i = 1; i < e.values.size(); ++i) CHECK(e.values(i - 1) <= e.values(i));
    CHECK(max_abs(e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() -
                  rho.matrix()) < 1e-13);
  }
  GIVEN("Square roots and PSD checks") {
    const DensityMatrix rho = random_density(3, rng);
    const ComplexMatrix s = psd_sqrt(rho.matrix());
    CHECK(max_abs(s * s - rho.matrix()) < 1e-13);
    CHECK(is_psd(rho.matrix()));
    CHECK_FALSE(is_psd(test::diag2(1.0, -0.1)));
  }
  GIVEN("Singular values") {
    const RealVector sv = singular_values(test::diag2(-3.0, 2.0));
    CHECK(sv(0) == Catch::Approx(3.0));
    CHECK(sv(1) == Catch::Approx(2.0));
  }
  GIVEN("Multiply and adjoint") {
    const ComplexMatrix a = test::gaussian_matrix(3, 3, rng), b = test::gaussian_matrix(3, 3, rng);
    CHECK(max_abs(matmul(a, b) - a * b) < 1e-14);
    CHECK(max_abs(adjoint(a) - a.adjoint()) == 0.0);
    CHECK(hermiticity_defect(hermitize(a)) < 1e-15);
  }
}

SCENARIO("Random number streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
  const Rng root(42);
  Rng s1 = root.split(1), s1b = root.split(1), s2 = root.split(2);
  const std::uint64_t x = s1.next_u64();
  CHECK(x == s1b.next_u64());
  CHECK(x != s2.next_u64());
  Rng c(5);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += std::norm(c.complex_normal());
  CHECK(std::abs(sum / n - 1.0) < 0.01);
}

}  // namespace test_qlinalg
}  // namespace ctc
