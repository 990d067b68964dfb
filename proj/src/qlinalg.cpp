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

#include "ctc/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "ctc/errors.hpp"
#include "ctc/kernels.hpp"
#include "ctc/log.hpp"

namespace ctc {
namespace {

std::string dims_to_string(const Dims& dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ']';
  return os.str();
}

void check_dims(Eigen::Index n, const Dims& dims, const char* what) {
  if (dims.empty() || static_cast<Eigen::Index>(dims_product(dims)) != n)
    throw DimensionMismatch(std::string(what) + ": dims " +
                            dims_to_string(dims) + " do not multiply to " +
                            std::to_string(n));
}

}  // namespace

std::size_t dims_product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

// --- DensityMatrix ----------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix matrix)
    : DensityMatrix(matrix, Dims{static_cast<std::size_t>(matrix.rows())}) {}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
    throw DimensionMismatch("density matrix must be square and non-empty");
  check_dims(matrix_.rows(), dims_, "density matrix");
  if (!matrix_.allFinite())
    throw InvalidState("density matrix has non-finite entries");
  const double defect = hermiticity_defect(matrix_);
  if (defect > tol::kHermitian)
    throw InvalidState("density matrix is not Hermitian (defect " +
                       std::to_string(defect) + ")");
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace)
    throw InvalidState("density matrix trace is " + std::to_string(tr));
  const RealVector eig = eigh(matrix_).values;
  if (eig(0) < tol::kMinEigenvalue)
    throw InvalidState("density matrix has eigenvalue " +
                       std::to_string(eig(0)));
}

DensityMatrix DensityMatrix::normalized(ComplexMatrix matrix, Dims dims) {
  const Complex tr = matrix.trace();
  if (!(std::abs(tr) > 0.0) || !std::isfinite(std::abs(tr)))
    throw InvalidState("cannot normalize a matrix with trace " +
                       std::to_string(tr.real()));
  return DensityMatrix(hermitize(matrix / tr.real()), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(d),
                       Dims{d});
}

DensityMatrix DensityMatrix::basis_state(std::size_t d, std::size_t k) {
  return PureState::basis_state(d, k).projector();
}

DensityMatrix DensityMatrix::with_dims(Dims dims) const {
  check_dims(matrix_.rows(), dims, "with_dims");
  DensityMatrix copy = *this;
  copy.dims_ = std::move(dims);
  return copy;
}

// --- PureState --------------------------------------------------------------

PureState::PureState(ComplexVector vector)
    : PureState(vector, Dims{static_cast<std::size_t>(vector.size())}) {}

PureState::PureState(ComplexVector vector, Dims dims)
    : vector_(std::move(vector)), dims_(std::move(dims)) {
  if (vector_.size() == 0) throw DimensionMismatch("empty state vector");
  check_dims(vector_.size(), dims_, "pure state");
  if (!vector_.allFinite())
    throw InvalidState("state vector has non-finite entries");
  const double norm = vector_.norm();
  if (std::abs(norm - 1.0) > tol::kUnitNorm)
    throw InvalidState("state vector norm is " + std::to_string(norm));
}

PureState PureState::normalized(ComplexVector vector, Dims dims) {
  const double norm = vector.norm();
  if (!(norm > 0.0)) throw InvalidState("cannot normalize the zero vector");
  return PureState(vector / norm, std::move(dims));
}

PureState PureState::basis_state(std::size_t d, std::size_t k) {
  if (k >= d) throw InvalidArgument("basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return PureState(std::move(v), Dims{d});
}

DensityMatrix PureState::projector() const {
  return DensityMatrix(vector_ * vector_.adjoint(), dims_);
}

// --- plumbing -----------------------------------------------------------------

ComplexMatrix identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return ComplexMatrix::Identity(n, n);
}

ComplexMatrix pauli_x() {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

ComplexMatrix pauli_z() {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

ComplexMatrix swap_gate(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return s;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matmul: inner dimensions differ");
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > tol::kHermitian)
    log::warn("hermitize: correcting defect " + std::to_string(defect));
  return 0.5 * (m + m.adjoint());
}

HermitianEigen eigh(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success)
    throw InvalidState("Hermitian eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector singular_values(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
}

bool is_psd(const ComplexMatrix& m, double tolerance) {
  if (hermiticity_defect(m) > tol::kHermitian) return false;
  return eigh(m).values(0) >= tolerance;
}

bool is_unitary(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix diff =
      m * m.adjoint() - ComplexMatrix::Identity(m.rows(), m.cols());
  return diff.cwiseAbs().maxCoeff() <= tolerance;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const HermitianEigen e = eigh(m);
  const RealVector roots = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * roots.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidArgument("haar_unitary: dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    q.col(k) *= mag > 0.0 ? diag / mag : Complex{1.0, 0.0};
  }
  return q;
}

DensityMatrix random_density(std::size_t d, Rng& rng) {
  // Reduced state of a Haar vector on C^d (x) C^d. With the vector reshaped
  // row-wise into a d x d matrix M, Tr_2 |psi><psi| = M M^dagger.
  const PureState psi = haar_state(d * d, rng);
  const auto n = static_cast<Eigen::Index>(d);
  const ComplexMatrix m =
      Eigen::Map<const ComplexMatrix>(psi.vector().data(), n, n).transpose();
  return DensityMatrix::normalized(m * m.adjoint(), Dims{d});
}

// --- core operations ----------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kernels::parallel::kron(a, b);
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const ComplexMatrix& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  return kernels::parallel::partial_trace(m, dims, keep);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> keep) {
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  Dims kept_dims;
  for (std::size_t k : kept) {
    if (k >= rho.dims().size())
      throw DimensionMismatch("partial_trace: subsystem index out of range");
    kept_dims.push_back(rho.dims()[k]);
  }
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), kept);
  return DensityMatrix::normalized(std::move(reduced), std::move(kept_dims));
}

PureState max_entangled(std::size_t d) {
  if (d == 0) throw InvalidArgument("max_entangled: dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexVector v = ComplexVector::Zero(n * n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = amp;
  return PureState(std::move(v), Dims{d, d});
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("trace_distance: operands differ in shape");
  return 0.5 * singular_values(a - b).sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("trace_distance: states differ in dimension (" +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
  return trace_distance(a.matrix(), b.matrix());
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double h = 0.0;
  for (double lambda : eigenvalues)
    if (lambda > tol::kEigenFloor) h -= lambda * std::log2(lambda);
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return std::max(0.0, entropy_of_spectrum(eigh(rho.matrix()).values));
}

PureState haar_state(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidArgument("haar_state: dimension must be >= 1");
  ComplexVector v(static_cast<Eigen::Index>(d));
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
    norm = v.norm();
  } while (!(norm > 0.0));
  return PureState(v / norm, Dims{d});
}

}  // namespace ctc
