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

#include "ctc/fixed_points.hpp"

#include <cmath>
#include <sstream>

#include "ctc/errors.hpp"
#include "ctc/log.hpp"

namespace ctc {
namespace {

std::string band_message(const std::vector<double>& band) {
  std::ostringstream os;
  os.precision(3);
  os << "fixed-point rank is ambiguous: singular values of (T - I) in ["
     << tol::kKernel << ", " << tol::kRankBand << "]:";
  for (double s : band) os << ' ' << std::scientific << s;
  return os.str();
}

}  // namespace

FixedPointProjector::FixedPointProjector(const QuantumChannel& ch) : d_(ch.d()) {
  const ComplexMatrix& t = ch.transfer();
  const Eigen::Index n = t.rows();
  const ComplexMatrix a = t - ComplexMatrix::Identity(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();

  Eigen::Index kernel = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s(i) < tol::kKernel)
      ++kernel;
    else if (s(i) <= tol::kRankBand)
      ambiguous_.push_back(s(i));
  }
  if (kernel == 0)
    throw InvalidState("channel has no fixed operator; it is not CPTP");
  if (!ambiguous_.empty()) log::warn(band_message(ambiguous_));

  // Singular values are sorted descending, so the kernel sits at the end.
  right_kernel_ = svd.matrixV().rightCols(kernel);
  const ComplexMatrix left = svd.matrixU().rightCols(kernel);
  const ComplexMatrix overlap = left.adjoint() * right_kernel_;
  projector_ = right_kernel_ * overlap.fullPivLu().solve(left.adjoint());
}

ComplexMatrix FixedPointProjector::act(const ComplexMatrix& omega) const {
  return unvectorize(projector_ * vectorize(omega), d_);
}

DensityMatrix FixedPointProjector::apply(const DensityMatrix& omega) const {
  if (omega.dim() != d_)
    throw DimensionMismatch("fixed_point_projection: state has dimension " +
                            std::to_string(omega.dim()) + ", channel acts on " +
                            std::to_string(d_));
  return DensityMatrix::normalized(hermitize(act(omega.matrix())), Dims{d_});
}

std::vector<ComplexMatrix> hermitian_basis_of(
    const std::vector<ComplexMatrix>& operators, std::size_t rank) {
  if (operators.empty() || rank == 0) return {};
  const Eigen::Index rows = operators.front().rows();
  const Eigen::Index cols = operators.front().cols();
  const Eigen::Index len = rows * cols;
  // Real embedding of Hermitian parts: [Re vec(H); Im vec(H)].
  Eigen::MatrixXd stacked(2 * len, 2 * static_cast<Eigen::Index>(operators.size()));
  Eigen::Index col = 0;
  for (const ComplexMatrix& x : operators) {
    const ComplexMatrix re_part = 0.5 * (x + x.adjoint());
    const ComplexMatrix im_part = Complex(0.0, -0.5) * (x - x.adjoint());
    for (const ComplexMatrix* h : {&re_part, &im_part}) {
      const ComplexVector v = vectorize(*h);
      stacked.col(col).head(len) = v.real();
      stacked.col(col).tail(len) = v.imag();
      ++col;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinU);
  std::vector<ComplexMatrix> basis;
  basis.reserve(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const Eigen::VectorXd u = svd.matrixU().col(static_cast<Eigen::Index>(k));
    ComplexVector v(len);
    for (Eigen::Index i = 0; i < len; ++i) v(i) = Complex(u(i), u(len + i));
    ComplexMatrix h = Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
    basis.push_back(0.5 * (h + h.adjoint()));
  }
  return basis;
}

FixedPointSet fixed_point_subspace(const QuantumChannel& ch) {
  const FixedPointProjector projector(ch);
  const std::size_t d = ch.d();
  const auto k = static_cast<Eigen::Index>(projector.rank());

  std::vector<ComplexMatrix> kernel_ops;
  for (Eigen::Index i = 0; i < k; ++i)
    kernel_ops.push_back(unvectorize(projector.right_kernel().col(i), d));
  std::vector<ComplexMatrix> hermitian =
      hermitian_basis_of(kernel_ops, projector.rank());

  // Traceless part: coefficient vectors orthogonal to the trace functional.
  Eigen::RowVectorXd traces(k);
  for (Eigen::Index i = 0; i < k; ++i)
    traces(i) = hermitian[static_cast<std::size_t>(i)].trace().real();
  std::vector<ComplexMatrix> traceless;
  if (k > 1) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(traces, Eigen::ComputeFullV);
    for (Eigen::Index j = 1; j < k; ++j) {
      ComplexMatrix b = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                            static_cast<Eigen::Index>(d));
      for (Eigen::Index i = 0; i < k; ++i)
        b += svd.matrixV()(i, j) * hermitian[static_cast<std::size_t>(i)];
      traceless.push_back(hermitize(b));
    }
  }

  FixedPointSet set{
      projector.apply(DensityMatrix::maximally_mixed(d)),
      std::move(hermitian),
      std::move(traceless),
      projector.rank(),
      projector.ambiguous_singular_values(),
      {}};
  if (!set.ambiguous_singular_values.empty())
    set.warnings.push_back(band_message(set.ambiguous_singular_values));
  return set;
}

DensityMatrix fixed_point_projection(const QuantumChannel& ch,
                                     const DensityMatrix& omega) {
  return FixedPointProjector(ch).apply(omega);
}

}  // namespace ctc
