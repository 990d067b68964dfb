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

#include <complex>

#include "ctc/errors.hpp"
#include "ctc/models.hpp"
#include "test_support.hpp"

namespace ctc {
namespace test_models {

static double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

static PureState plus_state() {
  ComplexVector v(2);
  v << 1.0, 1.0;
  return PureState::normalized(v, {2});
}

static BipartiteUnitary flip_c(std::size_t ds, std::size_t dc) {
  // I_S (x) cyclic shift on C: Tr of the shift is zero, so B = 0.
  ComplexMatrix shift = ComplexMatrix::Zero(static_cast<Eigen::Index>(dc),
                                            static_cast<Eigen::Index>(dc));
  for (std::size_t k = 0; k < dc; ++k)
    shift(static_cast<Eigen::Index>((k + 1) % dc), static_cast<Eigen::Index>(k)) = 1.0;
  return BipartiteUnitary(test::oracle_kron(identity(ds), shift), ds, dc);
}

SCENARIO("P-CTC evolution") {
  Rng rng(40);
  GIVEN("SWAP leaves the state unchanged") {
    const DensityMatrix rho = random_density(2, rng);
    const PctcOutcome out = pctc_evolve(BipartiteUnitary::swap(2), rho);
    CHECK(trace_distance(out.state, rho) < 1e-14);
    CHECK(out.normalization == Catch::Approx(1.0));
  }
  GIVEN("CNOT post-selects |0>") {
    const PctcOutcome out = pctc_evolve(BipartiteUnitary::cnot(), plus_state().projector());
    CHECK(trace_distance(out.state, DensityMatrix::basis_state(2, 0)) < 1e-14);
    CHECK(out.normalization == Catch::Approx(2.0));
    REQUIRE_THROWS_AS(pctc_evolve(BipartiteUnitary::cnot(), DensityMatrix::basis_state(2, 1)),
                      NullProjection);
  }
  GIVEN("The random suite") {
    for (const test::Case& c : test::random_suite(50, 41)) {
      const PctcOutcome out = pctc_evolve(c.u, c.rho);
      CHECK(max_abs(out.state.matrix() -
                    test::oracle_pctc(c.u.matrix(), c.u.d_s(), c.u.d_c(), c.rho.matrix())) <
            1e-12);
      const ComplexMatrix b = c.u.trace_over_c();
      CHECK(out.normalization ==
            Catch::Approx((b.adjoint() * b * c.rho.matrix()).trace().real()).epsilon(1e-12));
    }
  }
  GIVEN("Interactions with B = 0") {
    for (std::size_t dc : {2u, 3u}) {
      REQUIRE_THROWS_AS(pctc_evolve(flip_c(2, dc), random_density(2, rng)), NullProjection);
    }
  }
}

SCENARIO("T-CTC evolution") {
  Rng rng(42);
  GIVEN("CNOT with |+>") {
    const TctcOutcome out = tctc_evolve(BipartiteUnitary::cnot(), plus_state().projector());
    CHECK(max_abs(out.state.matrix() - test::diag2(0.75, 0.25)) < 1e-14);
    CHECK(out.z == Catch::Approx(4.0));
  }
  GIVEN("The random suite") {
    for (const test::Case& c : test::random_suite(50, 43)) {
      const TctcOutcome out = tctc_evolve(c.u, c.rho);
      CHECK(max_abs(out.state.matrix() -
                    test::oracle_tctc(c.u.matrix(), c.u.d_s(), c.u.d_c(), c.rho.matrix())) <
            1e-12);
    }
  }
  GIVEN("Interactions with B = 0") {
    for (std::size_t dc : {2u, 3u}) {
      const DensityMatrix rho = random_density(3, rng);
      CHECK(trace_distance(tctc_evolve(flip_c(3, dc), rho).state, rho) < 1e-13);
    }
  }
  GIVEN("A factored interaction equal to the full one") {
    for (const test::Case& c : test::random_suite(8, 44)) {
      // Expand U in the matrix-unit basis of C: U = sum_{ab} U_ab (x) |a><b|.
      const auto ds = static_cast<Eigen::Index>(c.u.d_s());
      const auto dc = static_cast<Eigen::Index>(c.u.d_c());
      FactoredInteraction f;
      std::vector<ComplexMatrix> w;
      for (Eigen::Index a = 0; a < dc; ++a)
        for (Eigen::Index b = 0; b < dc; ++b) {
          ComplexMatrix k(ds, ds);
          for (Eigen::Index i = 0; i < ds; ++i)
            for (Eigen::Index j = 0; j < ds; ++j) k(i, j) = c.u.matrix()(i * dc + a, j * dc + b);
          f.s_ops.push_back(k);
          ComplexMatrix e = ComplexMatrix::Zero(dc, dc);
          e(a, b) = 1.0;
          w.push_back(e);
        }
      const auto m = static_cast<Eigen::Index>(w.size());
      f.c_traces = ComplexVector(m);
      f.c_gram = ComplexMatrix(m, m);
      for (Eigen::Index k = 0; k < m; ++k) {
        f.c_traces(k) = w[static_cast<std::size_t>(k)].trace();
        for (Eigen::Index l = 0; l < m; ++l)
          f.c_gram(k, l) =
              (w[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(l)].adjoint()).trace();
      }
      const TctcOutcome full = tctc_evolve(c.u, c.rho);
      const TctcOutcome fact = tctc_evolve(f, c.rho);
      CHECK(max_abs(full.state.matrix() - fact.state.matrix()) < 1e-12);
      CHECK(full.z == Catch::Approx(fact.z).epsilon(1e-12));
    }
  }
}

SCENARIO("Model outputs are density matrices") {
  Rng rng(54);
  for (const test::Case& c : test::random_suite(50, 55)) {
    const std::vector<DensityMatrix> outs{
        pctc_evolve(c.u, c.rho).state, tctc_evolve(c.u, c.rho).state,
        dctc_evolve_auto(c.u, c.rho, ProjectFromPolicy{random_density(c.u.d_c(), rng)}).state};
    for (const DensityMatrix& o : outs) {
      CHECK(std::abs(o.matrix().trace() - 1.0) < 1e-12);
      CHECK(hermiticity_defect(o.matrix()) < 1e-12);
      CHECK(is_psd(o.matrix()));
    }
  }
}

SCENARIO("P-CTC normalization is the only nonlinearity") {
  for (const test::Case& c : test::random_suite(12, 56)) {
    const ComplexMatrix b = c.u.trace_over_c();
    const ComplexMatrix scaled = 3.7 * c.rho.matrix();
    const ComplexMatrix raw = b * scaled * b.adjoint();
    const double n = (b.adjoint() * b * scaled).trace().real();
    CHECK(max_abs(raw / n - pctc_evolve(c.u, c.rho).state.matrix()) < 1e-12);
  }
}

SCENARIO("Global phases do not change the CTC outputs") {
  for (const test::Case& c : test::random_suite(12, 45)) {
    const BipartiteUnitary rotated(std::polar(1.0, 1.234) * c.u.matrix(), c.u.d_s(), c.u.d_c());
    CHECK(trace_distance(pctc_evolve(c.u, c.rho).state, pctc_evolve(rotated, c.rho).state) <
          1e-12);
    CHECK(trace_distance(tctc_evolve(c.u, c.rho).state, tctc_evolve(rotated, c.rho).state) <
          1e-12);
  }
}

SCENARIO("Monte Carlo estimation of the T-CTC output") {
  GIVEN("CNOT with |+>") {
    const BipartiteUnitary u = BipartiteUnitary::cnot();
    const DensityMatrix exact = tctc_evolve(u, plus_state().projector()).state;
    const MonteCarloEstimate est = tctc_monte_carlo(u, plus_state(), 10000, Rng(1));
    CHECK(trace_distance(est.state, exact) < 0.05);
    CHECK(est.samples == 10000);

    ComplexMatrix mean = ComplexMatrix::Zero(2, 2);
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      mean += tctc_monte_carlo(u, plus_state(), 1000, Rng(seed)).state.matrix();
    mean /= 20.0;
    CHECK(test::oracle_trace_distance(mean, exact.matrix()) < 0.02);
  }
  GIVEN("The identity interaction") {
    const PureState psi = plus_state();
    const MonteCarloEstimate est =
        tctc_monte_carlo(BipartiteUnitary::identity(2, 3), psi, 500, Rng(3));
    CHECK(trace_distance(est.state, psi.projector()) < 1e-12);
  }
  GIVEN("Serial and parallel reductions") {
    for (const test::Case& c : test::random_suite(4, 46)) {
      Rng rng(47);
      const PureState psi = haar_state(c.u.d_s(), rng);
      const MonteCarloEstimate s =
          tctc_monte_carlo(c.u, psi, 3000, Rng(5), kernels::Execution::serial);
      const MonteCarloEstimate p =
          tctc_monte_carlo(c.u, psi, 3000, Rng(5), kernels::Execution::parallel);
      CHECK(max_abs(s.state.matrix() - p.state.matrix()) == 0.0);
      CHECK(s.standard_error == p.standard_error);
      CHECK(s.weight_sum == p.weight_sum);
    }
  }
  GIVEN("The random suite") {
    // Frobenius error within three standard errors.
    for (const test::Case& c : test::random_suite(16, 48)) {
      Rng rng(49);
      const PureState psi = haar_state(c.u.d_s(), rng);
      const ComplexMatrix exact =
          test::oracle_tctc(c.u.matrix(), c.u.d_s(), c.u.d_c(), psi.projector().matrix());
      const MonteCarloEstimate est = tctc_monte_carlo(c.u, psi, 20000, Rng(50));
      CHECK((est.state.matrix() - exact).norm() <= 3.0 * est.standard_error);
    }
  }
  GIVEN("Bad arguments") {
    REQUIRE_THROWS_AS(tctc_monte_carlo(BipartiteUnitary::cnot(), plus_state(), 0, Rng(1)),
                      InvalidArgument);
    REQUIRE_THROWS_AS(tctc_monte_carlo(BipartiteUnitary::identity(3, 2), plus_state(), 10, Rng(1)),
                      DimensionMismatch);
  }
}

SCENARIO("D-CTC evolution") {
  Rng rng(51);
  GIVEN("SWAP forces sigma = rho") {
    const DensityMatrix rho = random_density(2, rng);
    const DctcOutcome out = dctc_evolve(BipartiteUnitary::swap(2), rho, rho);
    CHECK(trace_distance(out.state, rho) < 1e-14);
    REQUIRE_THROWS_AS(
        dctc_evolve(BipartiteUnitary::swap(2), rho, DensityMatrix::maximally_mixed(2)),
        InconsistentSigma);
    const DctcOutcome aut = dctc_evolve_auto(BipartiteUnitary::swap(2), rho, MaxEntropyPolicy{});
    CHECK(trace_distance(aut.state, rho) < 1e-9);
  }
  GIVEN("The identity interaction") {
    const DensityMatrix rho = random_density(3, rng);
    const BipartiteUnitary u = BipartiteUnitary::identity(3, 2);
    CHECK(trace_distance(dctc_evolve(u, rho, DensityMatrix::basis_state(2, 1)).state, rho) <
          1e-14);
    const DctcOutcome aut = dctc_evolve_auto(u, rho, MaxEntropyPolicy{});
    CHECK(trace_distance(aut.sigma_c, DensityMatrix::maximally_mixed(2)) < 1e-8);
  }
  GIVEN("CNOT with the control at |0>") {
    const BipartiteUnitary u = BipartiteUnitary::cnot();
    const DensityMatrix zero = DensityMatrix::basis_state(2, 0);
    const DctcOutcome out = dctc_evolve(u, zero, DensityMatrix::maximally_mixed(2));
    CHECK(trace_distance(out.state, zero) < 1e-14);
    const DctcOutcome aut = dctc_evolve_auto(u, zero, MaxEntropyPolicy{});
    CHECK(trace_distance(aut.sigma_c, DensityMatrix::maximally_mixed(2)) < 1e-8);
    CHECK(trace_distance(aut.state, zero) < 1e-12);
  }
  GIVEN("A unique fixed point makes the seed state irrelevant") {
    const DensityMatrix rho = random_density(2, rng);
    const BipartiteUnitary u = BipartiteUnitary::swap(2);
    const DctcOutcome a = dctc_evolve_auto(u, rho, ProjectFromPolicy{random_density(2, rng)});
    const DctcOutcome b = dctc_evolve_auto(u, rho, ProjectFromPolicy{random_density(2, rng)});
    CHECK(trace_distance(a.sigma_c, rho) < 1e-12);
    CHECK(trace_distance(a.state, b.state) < 1e-12);
  }
  GIVEN("CNOT with |+> depends on the seed state") {
    const BipartiteUnitary u = BipartiteUnitary::cnot();
    const DensityMatrix plus = plus_state().projector();
    const DctcOutcome from_zero =
        dctc_evolve_auto(u, plus, ProjectFromPolicy{DensityMatrix::basis_state(2, 0)});
    CHECK(trace_distance(from_zero.state, DensityMatrix::maximally_mixed(2)) < 1e-12);
    const DctcOutcome from_plus = dctc_evolve_auto(u, plus, ProjectFromPolicy{plus});
    CHECK(trace_distance(from_plus.state, plus) < 1e-12);
    const DctcOutcome maxent = dctc_evolve_auto(u, plus, MaxEntropyPolicy{});
    CHECK(trace_distance(maxent.state, DensityMatrix::maximally_mixed(2)) < 1e-8);
  }
  GIVEN("The random suite") {
    for (const test::Case& c : test::random_suite(30, 52)) {
      const DctcOutcome out =
          dctc_evolve_auto(c.u, c.rho, ProjectFromPolicy{random_density(c.u.d_c(), rng)});
      CHECK(out.residual < 1e-8);
      CHECK(max_abs(out.state.matrix() -
                    test::oracle_evolve_s(c.u.matrix(), c.u.d_s(), c.u.d_c(), c.rho.matrix(),
                                          out.sigma_c.matrix())) < 1e-12);
    }
  }
  GIVEN("Dimension errors") {
    REQUIRE_THROWS_AS(dctc_evolve(BipartiteUnitary::cnot(), DensityMatrix::maximally_mixed(2),
                                  DensityMatrix::maximally_mixed(3)),
                      DimensionMismatch);
  }
}

SCENARIO("Interactions that leave C alone reduce to ordinary evolution") {
  Rng rng(53);
  for (std::size_t ds : {2u, 3u}) {
    for (std::size_t dc : {2u, 3u}) {
      const ComplexMatrix us = test::oracle_haar_unitary(ds, rng);
      const BipartiteUnitary u = BipartiteUnitary::local(us, dc);
      const DensityMatrix rho = random_density(ds, rng);
      const ComplexMatrix want = us * rho.matrix() * us.adjoint();
      CHECK(max_abs(pctc_evolve(u, rho).state.matrix() - want) < 1e-12);
      CHECK(max_abs(tctc_evolve(u, rho).state.matrix() - want) < 1e-12);
      CHECK(max_abs(dctc_evolve_auto(u, rho, MaxEntropyPolicy{}).state.matrix() - want) < 1e-9);
    }
  }
}

}  // namespace test_models
}  // namespace ctc
