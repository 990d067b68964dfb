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

#include <omp.h>

#include <algorithm>
#include <string>

#include "ctc/errors.hpp"
#include "ctc/kernels.hpp"

namespace ctc::kernels {

int max_threads() { return omp_get_max_threads(); }

namespace parallel {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index p = b.rows(), q = b.cols();
  ComplexMatrix out(a.rows() * p, a.cols() * q);
  const Eigen::Index cols = a.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * p, j * q, p, q) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (m.rows() != m.cols() ||
      static_cast<std::size_t>(m.rows()) != dims_product(dims))
    throw DimensionMismatch("partial_trace: matrix is " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) +
                            " but dims multiply to " +
                            std::to_string(dims_product(dims)));
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  const LocalIndexMap map = local_index_map(dims, kept);
  const auto n = static_cast<Eigen::Index>(map.local.size());
  ComplexMatrix out(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : map.rest)
        acc += m(static_cast<Eigen::Index>(map.local[i] + t),
                 static_cast<Eigen::Index>(map.local[j] + t));
      out(i, j) = acc;
    }
  return out;
}

void left_apply_local(ComplexMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> targets,
                      const ComplexMatrix& op) {
  const LocalIndexMap map = local_index_map(dims, targets);
  const auto local_dim = static_cast<Eigen::Index>(map.local.size());
  if (op.rows() != local_dim || op.cols() != local_dim)
    throw DimensionMismatch("local operator is " + std::to_string(op.rows()) +
                            "x" + std::to_string(op.cols()) +
                            " but targets span dimension " +
                            std::to_string(local_dim));
  if (static_cast<std::size_t>(m.rows()) != dims_product(dims))
    throw DimensionMismatch("left_apply_local: row count does not match dims");
  const Eigen::Index cols = m.cols();
#pragma omp parallel
  {
    ComplexVector in(local_dim), out(local_dim);
#pragma omp for schedule(static)
    for (Eigen::Index c = 0; c < cols; ++c)
      for (std::size_t r : map.rest) {
        for (Eigen::Index k = 0; k < local_dim; ++k)
          in(k) = m(static_cast<Eigen::Index>(r + map.local[k]), c);
        out.noalias() = op * in;
        for (Eigen::Index k = 0; k < local_dim; ++k)
          m(static_cast<Eigen::Index>(r + map.local[k]), c) = out(k);
      }
  }
}

void conjugate_local(ComplexMatrix& rho, std::span<const std::size_t> dims,
                     std::span<const std::size_t> targets,
                     const ComplexMatrix& op) {
  left_apply_local(rho, dims, targets, op);
  rho = rho.adjoint().eval();
  left_apply_local(rho, dims, targets, op);
  rho = rho.adjoint().eval();
}

}  // namespace parallel
}  // namespace ctc::kernels
