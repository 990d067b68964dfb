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

#include <vector>

#include "ctc/channels.hpp"

namespace ctc {

namespace tol {
/// Singular values of (transfer - I) below this count as kernel.
inline constexpr double kKernel = 1e-9;
/// Singular values in [kKernel, kRankBand] make the rank ambiguous.
inline constexpr double kRankBand = 1e-6;
inline constexpr double kFixedPoint = 1e-9;
}  // namespace tol

/// Spectral projector of a channel's transfer matrix onto eigenvalue 1.
/// Eigenvalue 1 of a CPTP map is semisimple, so with right kernel R and
/// left kernel L of (T - I) the projector is R (L^dagger R)^{-1} L^dagger.
/// Peripheral eigenvalues other than 1 are excluded, which makes this the
/// limit of the Cesaro means.
class FixedPointProjector {
 public:
  explicit FixedPointProjector(const QuantumChannel& ch);

  std::size_t d() const noexcept { return d_; }
  /// Dimension of the fixed operator space.
  std::size_t rank() const noexcept {
    return static_cast<std::size_t>(right_kernel_.cols());
  }
  const ComplexMatrix& matrix() const noexcept { return projector_; }
  /// Columns are vec'd fixed operators (orthonormal).
  const ComplexMatrix& right_kernel() const noexcept { return right_kernel_; }
  /// Singular values of (T - I) inside the ambiguity band, if any.
  const std::vector<double>& ambiguous_singular_values() const noexcept {
    return ambiguous_;
  }

  ComplexMatrix act(const ComplexMatrix& omega) const;
  DensityMatrix apply(const DensityMatrix& omega) const;

 private:
  std::size_t d_;
  ComplexMatrix projector_;
  ComplexMatrix right_kernel_;
  std::vector<double> ambiguous_;
};

/// Affine description of the fixed states: basepoint + span(traceless_basis),
/// intersected with the PSD cone.
struct FixedPointSet {
  DensityMatrix basepoint;
  /// Hilbert-Schmidt orthonormal Hermitian basis of all fixed operators.
  std::vector<ComplexMatrix> hermitian_basis;
  /// Hilbert-Schmidt orthonormal Hermitian basis of the traceless ones.
  std::vector<ComplexMatrix> traceless_basis;
  std::size_t dimension = 0;
  std::vector<double> ambiguous_singular_values;
  std::vector<std::string> warnings;
};

FixedPointSet fixed_point_subspace(const QuantumChannel& ch);

/// Cesaro-limit projection of omega onto the fixed points of ch.
DensityMatrix fixed_point_projection(const QuantumChannel& ch,
                                     const DensityMatrix& omega);

/// Real-orthonormal Hermitian basis for the span of `operators`, which must
/// be closed under adjoint. `rank` is the complex dimension of that span.
std::vector<ComplexMatrix> hermitian_basis_of(
    const std::vector<ComplexMatrix>& operators, std::size_t rank);

}  // namespace ctc
