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

#include <cstddef>

#include "ctc/fixed_points.hpp"

namespace ctc {

struct MaxEntropyOptions {
  /// Stop when the gradient on the affine slice (bits per unit HS length)
  /// drops below this.
  double gradient_tolerance = 1e-9;
  std::size_t max_iterations = 100000;
};

struct MaxEntropyResult {
  DensityMatrix state;
  double entropy = 0.0;  // bits
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
};

/// Maximizes von Neumann entropy over the fixed states of `ch`, i.e. over
/// (basepoint + span B_i) ∩ PSD, with damped Newton ascent. The search runs
/// on the support of the basepoint, which every relative-interior fixed
/// state shares; steps are halved until the iterate stays positive definite
/// there and the Armijo condition holds. Falls back to the gradient
/// direction if the Newton system is not usable.
///
/// Throws NonConvergence (carrying the final gradient norm) after
/// max_iterations.
MaxEntropyResult solve_max_entropy(const FixedPointSet& set,
                                   const MaxEntropyOptions& options = {});
MaxEntropyResult solve_max_entropy(const QuantumChannel& ch,
                                   const MaxEntropyOptions& options = {});

DensityMatrix max_entropy_fixed_point(const QuantumChannel& ch);

}  // namespace ctc
