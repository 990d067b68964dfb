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

#include <algorithm>
#include <string>

#include "ctc/errors.hpp"
#include "ctc/kernels.hpp"

namespace ctc::kernels {
namespace {

void check_targets(std::span<const std::size_t> dims,
                   std::span<const std::size_t> targets) {
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t t : targets) {
    if (t >= dims.size())
      throw DimensionMismatch("subsystem index " + std::to_string(t) +
                              " out of range for " +
                              std::to_string(dims.size()) + " subsystems");
    if (seen[t])
      throw InvalidArgument("subsystem index " + std::to_string(t) +
                            " listed twice");
    seen[t] = true;
  }
}

std::vector<std::size_t> offsets_for(std::span<const std::size_t> dims,
                                     const Dims& strides,
                                     std::span<const std::size_t> subsystems) {
  std::size_t count = 1;
  for (std::size_t s : subsystems) count *= dims[s];
  std::vector<std::size_t> offsets(count, 0);
  // Odometer over the listed subsystems, first listed most significant.
  std::vector<std::size_t> digit(subsystems.size(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t off = 0;
    for (std::size_t q = 0; q < subsystems.size(); ++q)
      off += digit[q] * strides[subsystems[q]];
    offsets[k] = off;
    for (std::size_t q = subsystems.size(); q-- > 0;) {
      if (++digit[q] < dims[subsystems[q]]) break;
      digit[q] = 0;
    }
  }
  return offsets;
}

}  // namespace

Dims strides_of(std::span<const std::size_t> dims) {
  Dims strides(dims.size(), 1);
  for (std::size_t q = dims.size(); q-- > 1;)
    strides[q - 1] = strides[q] * dims[q];
  return strides;
}

LocalIndexMap local_index_map(std::span<const std::size_t> dims,
                              std::span<const std::size_t> targets) {
  check_targets(dims, targets);
  const Dims strides = strides_of(dims);
  std::vector<std::size_t> others;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (std::find(targets.begin(), targets.end(), s) == targets.end())
      others.push_back(s);
  return {offsets_for(dims, strides, targets),
          offsets_for(dims, strides, others)};
}

ComplexMatrix embed_operator(const ComplexMatrix& op,
                             std::span<const std::size_t> dims,
                             std::span<const std::size_t> targets) {
  const auto n = static_cast<Eigen::Index>(dims_product(dims));
  ComplexMatrix full = ComplexMatrix::Identity(n, n);
  parallel::left_apply_local(full, dims, targets, op);
  return full;
}

namespace serial {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index p = b.rows(), q = b.cols();
  ComplexMatrix out(a.rows() * p, a.cols() * q);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index l = 0; l < q; ++l)
        for (Eigen::Index k = 0; k < p; ++k)
          out(i * p + k, j * q + l) = a(i, j) * b(k, l);
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
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
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
  ComplexVector in(local_dim), out(local_dim);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (std::size_t r : map.rest) {
      for (Eigen::Index k = 0; k < local_dim; ++k)
        in(k) = m(static_cast<Eigen::Index>(r + map.local[k]), c);
      out.noalias() = op * in;
      for (Eigen::Index k = 0; k < local_dim; ++k)
        m(static_cast<Eigen::Index>(r + map.local[k]), c) = out(k);
    }
}

void conjugate_local(ComplexMatrix& rho, std::span<const std::size_t> dims,
                     std::span<const std::size_t> targets,
                     const ComplexMatrix& op) {
  // O rho O^dagger = (O (O rho)^dagger)^dagger
  left_apply_local(rho, dims, targets, op);
  rho = rho.adjoint().eval();
  left_apply_local(rho, dims, targets, op);
  rho = rho.adjoint().eval();
}

}  // namespace serial
}  // namespace ctc::kernels
