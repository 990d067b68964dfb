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

// Data-parallel inner loops. Every kernel has a plain serial reference in
// `serial::` and an OpenMP version in `parallel::` with the same signature;
// the two must agree to rounding (bit-identical where the loop bodies do
// not reduce across iterations). The rest of the library calls the
// `parallel::` versions; tests and bench/ compare both.

#include <span>

#include "ctc/qlinalg.hpp"

namespace ctc::kernels {

enum class Execution { serial, parallel };

/// Row-major subsystem strides for `dims` (last subsystem stride 1).
Dims strides_of(std::span<const std::size_t> dims);

/// Offsets of every basis index of the `targets` subsystems (enumerated in
/// the order the targets are listed) and of every configuration of the
/// remaining subsystems. index = rest[r] + local[k].
struct LocalIndexMap {
  std::vector<std::size_t> local;
  std::vector<std::size_t> rest;
};
LocalIndexMap local_index_map(std::span<const std::size_t> dims,
                              std::span<const std::size_t> targets);

namespace serial {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// m <- (op on targets) * m.
void left_apply_local(ComplexMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> targets,
                      const ComplexMatrix& op);

/// rho <- O rho O^dagger with O = op acting on `targets`.
void conjugate_local(ComplexMatrix& rho, std::span<const std::size_t> dims,
                     std::span<const std::size_t> targets,
                     const ComplexMatrix& op);

}  // namespace serial

namespace parallel {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

void left_apply_local(ComplexMatrix& m, std::span<const std::size_t> dims,
                      std::span<const std::size_t> targets,
                      const ComplexMatrix& op);

void conjugate_local(ComplexMatrix& rho, std::span<const std::size_t> dims,
                     std::span<const std::size_t> targets,
                     const ComplexMatrix& op);

}  // namespace parallel

/// Full matrix of `op` acting on `targets` within the space `dims`.
ComplexMatrix embed_operator(const ComplexMatrix& op,
                             std::span<const std::size_t> dims,
                             std::span<const std::size_t> targets);

int max_threads();

}  // namespace ctc::kernels
