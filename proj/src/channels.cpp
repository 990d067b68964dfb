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

#include "ctc/channels.hpp"

#include <cmath>
#include <string>

#include "ctc/errors.hpp"

namespace ctc {
namespace {

std::size_t isqrt_exact(Eigen::Index n) {
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(double(n))));
  if (static_cast<Eigen::Index>(r * r) != n)
    throw DimensionMismatch("transfer matrix size " + std::to_string(n) +
                            " is not a perfect square");
  return r;
}

void require_dim(const DensityMatrix& omega, std::size_t d, const char* op) {
  if (omega.dim() != d)
    throw DimensionMismatch(std::string(op) + ": state has dimension " +
                            std::to_string(omega.dim()) +
                            ", channel acts on dimension " + std::to_string(d));
}

}  // namespace

// --- BipartiteUnitary ---------------------------------------------------------

BipartiteUnitary::BipartiteUnitary(ComplexMatrix matrix, std::size_t d_s,
                                   std::size_t d_c)
    : matrix_(std::move(matrix)), d_s_(d_s), d_c_(d_c) {
  if (d_s == 0 || d_c == 0)
    throw DimensionMismatch("bipartite unitary needs positive dimensions");
  const auto n = static_cast<Eigen::Index>(d_s * d_c);
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw DimensionMismatch("bipartite unitary is " +
                            std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", expected " +
                            std::to_string(n) + "x" + std::to_string(n));
  if (!matrix_.allFinite()) throw InvalidState("unitary has non-finite entries");
  if (!is_unitary(matrix_))
    throw InvalidState("matrix is not unitary within tolerance");
}

BipartiteUnitary BipartiteUnitary::identity(std::size_t d_s, std::size_t d_c) {
  return {ctc::identity(d_s * d_c), d_s, d_c};
}

BipartiteUnitary BipartiteUnitary::swap(std::size_t d) {
  return {swap_gate(d), d, d};
}

BipartiteUnitary BipartiteUnitary::cnot() {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return {kron(p0, ctc::identity(2)) + kron(p1, pauli_x()), 2, 2};
}

BipartiteUnitary BipartiteUnitary::cz() {
  ComplexMatrix m = ctc::identity(4);
  m(3, 3) = -1.0;
  return {m, 2, 2};
}

BipartiteUnitary BipartiteUnitary::local(const ComplexMatrix& u_s,
                                         std::size_t d_c) {
  return {kron(u_s, ctc::identity(d_c)), static_cast<std::size_t>(u_s.rows()),
          d_c};
}

ComplexMatrix BipartiteUnitary::trace_over_c() const {
  const Dims dims{d_s_, d_c_};
  const std::size_t keep[] = {0};
  return partial_trace(matrix_, dims, keep);
}

ComplexMatrix BipartiteUnitary::evolve_s(const ComplexMatrix& rho_s,
                                         const ComplexMatrix& sigma_c) const {
  const Dims dims{d_s_, d_c_};
  const std::size_t keep[] = {0};
  return partial_trace(matrix_ * kron(rho_s, sigma_c) * matrix_.adjoint(), dims,
                       keep);
}

// --- QuantumChannel -----------------------------------------------------------

ComplexVector vectorize(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  if (v.size() != n * n)
    throw DimensionMismatch("unvectorize: vector length does not match d^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

QuantumChannel::QuantumChannel(std::size_t d, ComplexMatrix transfer,
                               std::optional<std::vector<ComplexMatrix>> kraus)
    : d_(d), transfer_(std::move(transfer)), kraus_(std::move(kraus)) {}

QuantumChannel QuantumChannel::from_kraus(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) throw InvalidArgument("empty Kraus list");
  const Eigen::Index n = kraus.front().rows();
  ComplexMatrix completeness = ComplexMatrix::Zero(n, n);
  ComplexMatrix transfer = ComplexMatrix::Zero(n * n, n * n);
  for (const ComplexMatrix& k : kraus) {
    if (k.rows() != n || k.cols() != n)
      throw DimensionMismatch("Kraus operators must all be " +
                              std::to_string(n) + "x" + std::to_string(n));
    completeness += k.adjoint() * k;
    transfer += kron(k.conjugate(), k);
  }
  const double defect =
      (completeness - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > tol::kTracePreservation)
    throw InvalidState("Kraus operators are not trace preserving (defect " +
                       std::to_string(defect) + ")");
  return QuantumChannel(static_cast<std::size_t>(n), std::move(transfer),
                        std::move(kraus));
}

QuantumChannel QuantumChannel::from_transfer(ComplexMatrix transfer) {
  if (transfer.rows() != transfer.cols())
    throw DimensionMismatch("transfer matrix must be square");
  const std::size_t d = isqrt_exact(transfer.rows());
  QuantumChannel ch(d, std::move(transfer), std::nullopt);
  const double tp = ch.trace_preservation_defect();
  if (tp > tol::kTracePreservation)
    throw InvalidState("map is not trace preserving (defect " +
                       std::to_string(tp) + ")");
  const double choi_min = ch.choi_min_eigenvalue();
  if (choi_min < tol::kChoiEigenvalue)
    throw InvalidState("map is not completely positive (Choi eigenvalue " +
                       std::to_string(choi_min) + ")");
  return ch;
}

QuantumChannel QuantumChannel::identity(std::size_t d) {
  return from_kraus({ctc::identity(d)});
}

QuantumChannel QuantumChannel::unitary(const ComplexMatrix& v) {
  if (!is_unitary(v)) throw InvalidState("unitary channel needs a unitary");
  return from_kraus({v});
}

QuantumChannel QuantumChannel::constant(const DensityMatrix& rho) {
  // K_{a,b} = sqrt(lambda_a) |r_a><b|
  const HermitianEigen e = eigh(rho.matrix());
  const auto n = static_cast<Eigen::Index>(rho.dim());
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index a = 0; a < n; ++a) {
    const double lambda = e.values(a);
    if (lambda <= tol::kEigenFloor) continue;
    for (Eigen::Index b = 0; b < n; ++b) {
      ComplexMatrix k = ComplexMatrix::Zero(n, n);
      k.col(b) = std::sqrt(lambda) * e.vectors.col(a);
      kraus.push_back(std::move(k));
    }
  }
  // Renormalize away the clipped eigenvalues so the map stays exactly TP.
  double kept = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    if (e.values(a) > tol::kEigenFloor) kept += e.values(a);
  for (ComplexMatrix& k : kraus) k /= std::sqrt(kept);
  return from_kraus(std::move(kraus));
}

ComplexMatrix QuantumChannel::choi() const {
  const auto d = static_cast<Eigen::Index>(d_);
  ComplexMatrix j(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index jj = 0; jj < d; ++jj)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          j(i * d + a, jj * d + b) = transfer_(b * d + a, jj * d + i);
  return j;
}

double QuantumChannel::trace_preservation_defect() const {
  const auto d = static_cast<Eigen::Index>(d_);
  const ComplexVector vec_i = vectorize(ComplexMatrix::Identity(d, d));
  return (transfer_.adjoint() * vec_i - vec_i).cwiseAbs().maxCoeff();
}

double QuantumChannel::choi_min_eigenvalue() const {
  return eigh(choi()).values(0);
}

ComplexMatrix QuantumChannel::act(const ComplexMatrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != d_ ||
      static_cast<std::size_t>(x.cols()) != d_)
    throw DimensionMismatch("channel acts on dimension " + std::to_string(d_));
  return unvectorize(transfer_ * vectorize(x), d_);
}

QuantumChannel QuantumChannel::after(const QuantumChannel& first) const {
  if (first.d_ != d_) throw DimensionMismatch("composing channels of unequal d");
  std::optional<std::vector<ComplexMatrix>> kraus;
  if (kraus_ && first.kraus_) {
    kraus.emplace();
    for (const ComplexMatrix& a : *kraus_)
      for (const ComplexMatrix& b : *first.kraus_) kraus->push_back(a * b);
  }
  return QuantumChannel(d_, transfer_ * first.transfer_, std::move(kraus));
}

QuantumChannel QuantumChannel::damped(double gamma) const {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidArgument("damping gamma must lie in (0, 1), got " +
                          std::to_string(gamma));
  const auto n = transfer_.rows();
  std::optional<std::vector<ComplexMatrix>> kraus;
  if (kraus_) {
    kraus.emplace();
    kraus->push_back(std::sqrt(gamma) * ctc::identity(d_));
    for (const ComplexMatrix& k : *kraus_)
      kraus->push_back(std::sqrt(1.0 - gamma) * k);
  }
  return QuantumChannel(
      d_, gamma * ComplexMatrix::Identity(n, n) + (1.0 - gamma) * transfer_,
      std::move(kraus));
}

// --- operations -----------------------------------------------------------------

QuantumChannel induced_channel(const BipartiteUnitary& u,
                               const DensityMatrix& rho_s) {
  if (rho_s.dim() != u.d_s())
    throw DimensionMismatch("induced_channel: rho_S has dimension " +
                            std::to_string(rho_s.dim()) + ", unitary expects " +
                            std::to_string(u.d_s()));
  // K_{s,a} = sqrt(lambda_a) (<s|_S (x) I_C) U (|a>_S (x) I_C)
  const auto ds = static_cast<Eigen::Index>(u.d_s());
  const auto dc = static_cast<Eigen::Index>(u.d_c());
  const HermitianEigen e = eigh(rho_s.matrix());
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index a = 0; a < ds; ++a) {
    const double lambda = e.values(a);
    if (lambda <= tol::kEigenFloor) continue;
    for (Eigen::Index s = 0; s < ds; ++s) {
      ComplexMatrix k = ComplexMatrix::Zero(dc, dc);
      for (Eigen::Index t = 0; t < ds; ++t)
        k += e.vectors(t, a) * u.matrix().block(s * dc, t * dc, dc, dc);
      kraus.push_back(std::sqrt(lambda) * k);
    }
  }
  double kept = 0.0;
  for (Eigen::Index a = 0; a < ds; ++a)
    if (e.values(a) > tol::kEigenFloor) kept += e.values(a);
  for (ComplexMatrix& k : kraus) k /= std::sqrt(kept);
  return QuantumChannel::from_kraus(std::move(kraus));
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& omega) {
  require_dim(omega, ch.d(), "apply");
  return DensityMatrix::normalized(ch.act(omega.matrix()), Dims{ch.d()});
}

DensityMatrix cesaro_average(const QuantumChannel& ch,
                             const DensityMatrix& omega, std::size_t n) {
  require_dim(omega, ch.d(), "cesaro_average");
  ComplexMatrix current = omega.matrix();
  ComplexMatrix sum = current;
  for (std::size_t i = 1; i <= n; ++i) {
    current = ch.act(current);
    sum += current;
  }
  return DensityMatrix::normalized(sum / static_cast<double>(n + 1),
                                   Dims{ch.d()});
}

DensityMatrix krasnoselskij_iterate(const QuantumChannel& ch,
                                    const DensityMatrix& omega, double gamma,
                                    std::size_t n) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidArgument("krasnoselskij_iterate: gamma must lie in (0, 1), got " +
                          std::to_string(gamma));
  require_dim(omega, ch.d(), "krasnoselskij_iterate");
  ComplexMatrix current = omega.matrix();
  for (std::size_t i = 0; i < n; ++i)
    current = gamma * current + (1.0 - gamma) * ch.act(current);
  return DensityMatrix::normalized(current, Dims{ch.d()});
}

double verify_consistency(const QuantumChannel& ch, const DensityMatrix& sigma) {
  require_dim(sigma, ch.d(), "verify_consistency");
  return trace_distance(sigma.matrix(), ch.act(sigma.matrix()));
}

}  // namespace ctc
