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

// Direct-sum structure of a channel's fixed points.
//
// The fixed states of a CPTP map N on H_C all take the form
//
//     sigma = (+)_j q(j) sigma_j (x) rho_j
//
// with respect to a decomposition H_C = (+)_j H_{L_j} (x) H_{R_j} (plus a
// transient subspace that no fixed state touches). The rho_j depend only on
// N. detect_blocks recovers {Pi_j, d_Lj, d_Rj, rho_j} and the aligning basis.

#include <cstdint>
#include <span>
#include <vector>

#include "ctc/channels.hpp"

namespace ctc {

namespace tol {
inline constexpr double kBlockVerification = 1e-8;
}

struct Block {
  /// Projector onto H_{L_j} (x) H_{R_j} in the channel's own basis.
  ComplexMatrix projector;
  std::size_t d_left = 0;
  std::size_t d_right = 0;
  /// The fixed-point-independent factor on R_j.
  DensityMatrix rho;
  /// Columns [offset, offset + d_left * d_right) of the basis span this
  /// block, enumerated as l * d_right + r.
  std::size_t offset = 0;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  /// Unitary whose leading columns align H_C with (+)_j H_Lj (x) H_Rj; the
  /// remaining columns span the transient subspace.
  ComplexMatrix basis;
  std::size_t support_dim = 0;
  /// Worst block-form deviation seen while verifying on random states.
  double verification_residual = 0.0;

  std::size_t d() const noexcept {
    return static_cast<std::size_t>(basis.rows());
  }
  bool total() const noexcept { return support_dim == d(); }

  /// Isometry onto block j (columns of `basis`).
  ComplexMatrix block_isometry(std::size_t j) const;

  /// (+)_j Tr_{R_j}{Pi_j omega Pi_j} (x) rho_j. Equals the fixed-point
  /// projection when the decomposition is total.
  ComplexMatrix project(const ComplexMatrix& omega) const;

  /// q(j) proportional to 2^{H(rho_j) + log d_Lj}, normalized.
  std::vector<double> max_entropy_weights() const;
  /// (+)_j q(j) pi_j (x) rho_j with the weights above.
  DensityMatrix max_entropy_state() const;
};

/// Throws DecompositionFailed if the recovered structure does not reproduce
/// the block form of projected random states within tol::kBlockVerification.
BlockDecomposition detect_blocks(const QuantumChannel& ch,
                                 std::uint64_t seed = 0x5eedb10c);

/// Prescription for a test channel with a known decomposition.
struct BlockSpec {
  std::size_t d_left;
  DensityMatrix rho;  // on R; d_right = rho.dim()
};

/// Channel acting on block j as id_{L_j} (x) M_j, where M_j has rho_j as
/// its unique fixed point: M_j(tau) = (1 - t) V tau V^dagger + t Tr(tau) rho_j
/// with V a diagonal phase in rho_j's eigenbasis. Cross-block coherences are
/// destroyed. `basis` (a unitary on the total space) rotates the whole
/// structure; pass identity for the aligned case.
QuantumChannel block_structured_channel(std::span<const BlockSpec> blocks,
                                        const ComplexMatrix& basis,
                                        double mixing = 0.5);

}  // namespace ctc
