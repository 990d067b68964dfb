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

// Dense complex linear algebra and quantum-state value types.
//
// Subsystem ordering convention: for dims [d0, d1, ..., dk] the first
// subsystem is the most significant digit of the basis index, i.e. the
// Hilbert space is H_0 (x) H_1 (x) ... (x) H_k in kron order.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ctc/rng.hpp"

namespace ctc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kMinEigenvalue = -1e-9;
inline constexpr double kUnitNorm = 1e-12;
inline constexpr double kEigenFloor = 1e-12;
inline constexpr double kUnitary = 1e-10;
}  // namespace tol

std::size_t dims_product(std::span<const std::size_t> dims);

class PureState;

/// Hermitian, positive semidefinite, unit-trace matrix with subsystem dims.
/// Construction validates; instances are immutable.
class DensityMatrix {
 public:
  /// Validates the invariants and symmetrizes away sub-tolerance drift.
  /// Throws InvalidState or DimensionMismatch.
  DensityMatrix(ComplexMatrix matrix, Dims dims);
  explicit DensityMatrix(ComplexMatrix matrix);

  /// Divides by the trace first; for outputs of unnormalized formulas.
  static DensityMatrix normalized(ComplexMatrix matrix, Dims dims);
  static DensityMatrix maximally_mixed(std::size_t d);
  static DensityMatrix basis_state(std::size_t d, std::size_t k);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(matrix_.rows());
  }

  /// Same matrix, different subsystem split (product must match).
  DensityMatrix with_dims(Dims dims) const;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

/// Unit-norm state vector with subsystem dims.
class PureState {
 public:
  PureState(ComplexVector vector, Dims dims);
  explicit PureState(ComplexVector vector);

  static PureState normalized(ComplexVector vector, Dims dims);
  static PureState basis_state(std::size_t d, std::size_t k);

  const ComplexVector& vector() const noexcept { return vector_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(vector_.size());
  }

  DensityMatrix projector() const;

 private:
  ComplexVector vector_;
  Dims dims_;
};

struct HermitianEigen {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

// --- plumbing -------------------------------------------------------------

ComplexMatrix identity(std::size_t d);
ComplexMatrix pauli_x();
ComplexMatrix pauli_z();
/// SWAP on C^d (x) C^d.
ComplexMatrix swap_gate(std::size_t d);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
/// (m + m^dagger)/2; logs through ctc::log when the correction exceeds
/// tol::kHermitian.
ComplexMatrix hermitize(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);

HermitianEigen eigh(const ComplexMatrix& m);
RealVector singular_values(const ComplexMatrix& m);
bool is_psd(const ComplexMatrix& m, double tolerance = tol::kMinEigenvalue);
bool is_unitary(const ComplexMatrix& m, double tolerance = tol::kUnitary);
/// Square root of a PSD matrix (negative eigenvalues clipped to zero).
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Haar-random unitary: QR of a complex Ginibre matrix with the diagonal
/// of R made real positive.
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);
/// Random density matrix (induced measure from a Haar state on d x d).
DensityMatrix random_density(std::size_t d, Rng& rng);

// --- core operations --------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors);

/// Trace over every subsystem not listed in `keep`. `keep` may be given in
/// any order; the kept subsystems stay in their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> keep);

/// (1/sqrt d) sum_i |i>|i> on dims [d, d].
PureState max_entangled(std::size_t d);

/// Half the trace norm of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entropy in bits; eigenvalues at or below tol::kEigenFloor contribute 0.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_spectrum(const RealVector& eigenvalues);

/// Normalized vector of i.i.d. standard complex Gaussians.
PureState haar_state(std::size_t d, Rng& rng);

}  // namespace ctc
