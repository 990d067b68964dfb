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

#pragma once

// The three CTC evolutions. S is the chronology-respecting system, C the
// register on the loop; U acts on S (x) C.
//
//   P-CTC:  rho -> B rho B^dagger / N,  B = Tr_C U,  N = Tr{B^dagger B rho}
//   T-CTC:  rho -> (B rho B^dagger + Tr_C{U (rho (x) I) U^dagger}) / z
//   D-CTC:  rho -> Tr_C{U (rho (x) sigma) U^dagger},  sigma a fixed point of
//           N_{U,rho}

#include <variant>

#include "ctc/channels.hpp"
#include "ctc/kernels.hpp"

namespace ctc {

namespace tol {
inline constexpr double kNullProjection = 1e-12;
inline constexpr double kConsistency = 1e-8;
inline constexpr double kWeightFloor = 1e-300;
}  // namespace tol

struct PctcOutcome {
  DensityMatrix state;
  double normalization;  // N
};

struct TctcOutcome {
  DensityMatrix state;
  double z;  // trace before normalization
};

struct DctcOutcome {
  DensityMatrix state;
  DensityMatrix sigma_c;
  double residual;
};

/// Throws NullProjection when N <= null_threshold.
PctcOutcome pctc_evolve(const BipartiteUnitary& u, const DensityMatrix& rho,
                        double null_threshold = tol::kNullProjection);

TctcOutcome tctc_evolve(const BipartiteUnitary& u, const DensityMatrix& rho);

/// U = sum_k K_k (x) W_k given only through the S-side operators K_k and
/// the C-side traces Tr W_k and Gram matrix Tr(W_k W_l^dagger). This is
/// enough for the T-CTC formula and avoids materializing large C registers.
struct FactoredInteraction {
  std::vector<ComplexMatrix> s_ops;
  ComplexVector c_traces;
  ComplexMatrix c_gram;
};

TctcOutcome tctc_evolve(const FactoredInteraction& u, const DensityMatrix& rho);

struct MonteCarloEstimate {
  DensityMatrix state;
  /// Delta-method standard error of the estimate, aggregated in Frobenius
  /// norm over all entries.
  double standard_error;
  std::size_t samples;
  double weight_sum;
};

/// Self-normalized importance sampling of the T-CTC ensemble: Haar proposals
/// phi_i, weights w_i = ||<phi_i|U|psi>|phi_i>||^2. Samples are grouped in
/// fixed chunks, each drawing from rng.split(chunk), and reduced in chunk
/// order, so the result does not depend on thread count. Bias is
/// O(1/samples). Throws AllWeightsZero.
MonteCarloEstimate tctc_monte_carlo(
    const BipartiteUnitary& u, const PureState& psi, std::size_t samples,
    const Rng& rng, kernels::Execution exec = kernels::Execution::parallel);

/// Throws InconsistentSigma when sigma is not a fixed point of N_{U,rho}
/// within `tolerance`.
DctcOutcome dctc_evolve(const BipartiteUnitary& u, const DensityMatrix& rho,
                        const DensityMatrix& sigma,
                        double tolerance = tol::kConsistency);

struct MaxEntropyPolicy {};
struct ProjectFromPolicy {
  DensityMatrix omega;
};
using DctcPolicy = std::variant<MaxEntropyPolicy, ProjectFromPolicy>;

DctcOutcome dctc_evolve_auto(const BipartiteUnitary& u, const DensityMatrix& rho,
                             const DctcPolicy& policy);

}  // namespace ctc
