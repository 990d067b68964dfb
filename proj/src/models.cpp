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

#include "ctc/models.hpp"

#include <cmath>
#include <string>

#include "ctc/errors.hpp"
#include "ctc/fixed_points.hpp"
#include "ctc/max_entropy.hpp"

namespace ctc {
namespace {

constexpr std::size_t kChunk = 256;

void require_s_dim(const BipartiteUnitary& u, std::size_t d, const char* op) {
  if (d != u.d_s())
    throw DimensionMismatch(std::string(op) + ": input has dimension " +
                            std::to_string(d) + ", unitary expects d_s = " +
                            std::to_string(u.d_s()));
}

// Per-entry sums for the ratio estimator sum X_i / sum w_i and its variance.
struct Accumulator {
  ComplexMatrix sum_x;    // sum X_i
  Eigen::MatrixXd sum_x2; // sum |X_i|^2
  ComplexMatrix sum_xw;   // sum X_i w_i
  double sum_w = 0.0;
  double sum_w2 = 0.0;

  explicit Accumulator(Eigen::Index d)
      : sum_x(ComplexMatrix::Zero(d, d)),
        sum_x2(Eigen::MatrixXd::Zero(d, d)),
        sum_xw(ComplexMatrix::Zero(d, d)) {}

  void merge(const Accumulator& o) {
    sum_x += o.sum_x;
    sum_x2 += o.sum_x2;
    sum_xw += o.sum_xw;
    sum_w += o.sum_w;
    sum_w2 += o.sum_w2;
  }
};

Accumulator sample_chunk(const BipartiteUnitary& u, const PureState& psi,
                         std::size_t count, Rng rng) {
  const auto ds = static_cast<Eigen::Index>(u.d_s());
  const auto dc = static_cast<Eigen::Index>(u.d_c());
  Accumulator acc(ds);
  ComplexVector v(ds);
  for (std::size_t i = 0; i < count; ++i) {
    const PureState phi = haar_state(u.d_c(), rng);
    const ComplexVector y = u.matrix() * kron(psi.vector(), phi.vector());
    for (Eigen::Index s = 0; s < ds; ++s)
      v(s) = phi.vector().dot(y.segment(s * dc, dc));  // <phi|_C y
    const double w = v.squaredNorm();
    const ComplexMatrix x = v * v.adjoint();
    acc.sum_x += x;
    acc.sum_x2 += x.cwiseAbs2();
    acc.sum_xw += w * x;
    acc.sum_w += w;
    acc.sum_w2 += w * w;
  }
  return acc;
}

}  // namespace

PctcOutcome pctc_evolve(const BipartiteUnitary& u, const DensityMatrix& rho,
                        double null_threshold) {
  require_s_dim(u, rho.dim(), "pctc_evolve");
  const ComplexMatrix b = u.trace_over_c();
  const ComplexMatrix out = b * rho.matrix() * b.adjoint();
  const double n = (b.adjoint() * b * rho.matrix()).trace().real();
  if (!(n > null_threshold)) throw NullProjection(n);
  return {DensityMatrix::normalized(out, rho.dims()), n};
}

TctcOutcome tctc_evolve(const BipartiteUnitary& u, const DensityMatrix& rho) {
  require_s_dim(u, rho.dim(), "tctc_evolve");
  const ComplexMatrix b = u.trace_over_c();
  const ComplexMatrix out = b * rho.matrix() * b.adjoint() +
                            u.evolve_s(rho.matrix(), identity(u.d_c()));
  const double z = out.trace().real();
  return {DensityMatrix::normalized(out, rho.dims()), z};
}

TctcOutcome tctc_evolve(const FactoredInteraction& u, const DensityMatrix& rho) {
  const std::size_t terms = u.s_ops.size();
  if (terms == 0 || static_cast<std::size_t>(u.c_traces.size()) != terms ||
      static_cast<std::size_t>(u.c_gram.rows()) != terms ||
      static_cast<std::size_t>(u.c_gram.cols()) != terms)
    throw DimensionMismatch("factored interaction: inconsistent term counts");
  const Eigen::Index d = u.s_ops.front().rows();
  if (static_cast<std::size_t>(d) != rho.dim())
    throw DimensionMismatch("factored interaction: S-side dimension " +
                            std::to_string(d) + " does not match input " +
                            std::to_string(rho.dim()));
  ComplexMatrix b = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < terms; ++k)
    b += u.c_traces(static_cast<Eigen::Index>(k)) * u.s_ops[k];
  ComplexMatrix out = b * rho.matrix() * b.adjoint();
  std::vector<ComplexMatrix> left(terms);
  for (std::size_t k = 0; k < terms; ++k) left[k] = u.s_ops[k] * rho.matrix();
  for (std::size_t k = 0; k < terms; ++k)
    for (std::size_t l = 0; l < terms; ++l) {
      const Complex g = u.c_gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
      if (g != Complex{0.0, 0.0}) out += g * left[k] * u.s_ops[l].adjoint();
    }
  const double z = out.trace().real();
  return {DensityMatrix::normalized(out, rho.dims()), z};
}

MonteCarloEstimate tctc_monte_carlo(const BipartiteUnitary& u,
                                    const PureState& psi, std::size_t samples,
                                    const Rng& rng, kernels::Execution exec) {
  if (samples == 0) throw InvalidArgument("tctc_monte_carlo: samples must be >= 1");
  require_s_dim(u, psi.dim(), "tctc_monte_carlo");
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Accumulator> parts(chunks, Accumulator(static_cast<Eigen::Index>(u.d_s())));
  auto run = [&](std::size_t c) {
    const std::size_t count = std::min(kChunk, samples - c * kChunk);
    parts[c] = sample_chunk(u, psi, count, rng.split(c));
  };
  if (exec == kernels::Execution::parallel) {
    const auto n = static_cast<long long>(chunks);
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < n; ++c) run(static_cast<std::size_t>(c));
  } else {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
  }
  Accumulator total(static_cast<Eigen::Index>(u.d_s()));
  for (const Accumulator& p : parts) total.merge(p);

  if (!(total.sum_w > tol::kWeightFloor)) throw AllWeightsZero(total.sum_w);
  const ComplexMatrix estimate = total.sum_x / total.sum_w;
  // Var(R_ab) ~ sum_i |X_i,ab - R_ab w_i|^2 / (sum w)^2
  const Eigen::MatrixXd resid =
      (total.sum_x2 -
       2.0 * (estimate.conjugate().cwiseProduct(total.sum_xw)).real() +
       estimate.cwiseAbs2() * total.sum_w2)
          .cwiseMax(0.0);
  const double se = std::sqrt(resid.sum()) / total.sum_w;
  return {DensityMatrix::normalized(estimate, psi.dims()), se, samples,
          total.sum_w};
}

DctcOutcome dctc_evolve(const BipartiteUnitary& u, const DensityMatrix& rho,
                        const DensityMatrix& sigma, double tolerance) {
  require_s_dim(u, rho.dim(), "dctc_evolve");
  if (sigma.dim() != u.d_c())
    throw DimensionMismatch("dctc_evolve: sigma has dimension " +
                            std::to_string(sigma.dim()) + ", unitary expects d_c = " +
                            std::to_string(u.d_c()));
  const double residual = verify_consistency(induced_channel(u, rho), sigma);
  if (residual > tolerance) throw InconsistentSigma(residual);
  return {DensityMatrix::normalized(u.evolve_s(rho.matrix(), sigma.matrix()),
                                    rho.dims()),
          sigma, residual};
}

DctcOutcome dctc_evolve_auto(const BipartiteUnitary& u, const DensityMatrix& rho,
                             const DctcPolicy& policy) {
  require_s_dim(u, rho.dim(), "dctc_evolve_auto");
  const QuantumChannel ch = induced_channel(u, rho);
  const DensityMatrix sigma = std::visit(
      [&](const auto& p) -> DensityMatrix {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, MaxEntropyPolicy>)
          return max_entropy_fixed_point(ch);
        else
          return fixed_point_projection(ch, p.omega);
      },
      policy);
  return dctc_evolve(u, rho, sigma);
}

}  // namespace ctc
