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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ctc/qlinalg.hpp"

namespace ctc {

enum class ControlKind { dicke, staircase, product };

std::string_view to_string(ControlKind kind);
/// Throws InvalidArgument for unknown names.
ControlKind parse_control_kind(std::string_view name);

/// State of the control register F_1 ... F_n. Bit strings are indexed with
/// F_1 as the most significant bit, matching the tensor order.
class ControlState {
 public:
  ControlKind kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return n_; }
  /// Amplitude on |1> per control for the product state is sqrt(1 - gamma).
  double gamma() const noexcept { return gamma_; }

  double amplitude(std::uint64_t bits) const;
  /// Full 2^n amplitude vector; throws CapacityExceeded for n > 24.
  ComplexVector amplitudes() const;

  /// P(|b| = m) for m = 0..n.
  std::vector<double> weight_distribution() const;
  /// P(b_n = 1 | |b| = m) for m = 0..n.
  std::vector<double> last_bit_given_weight() const;

 private:
  friend ControlState make_control_state(ControlKind, std::size_t, double);
  ControlState(ControlKind kind, std::size_t n, double gamma)
      : kind_(kind), n_(n), gamma_(gamma) {}

  ControlKind kind_;
  std::size_t n_;
  double gamma_;
};

/// Throws InvalidArgument when n = 0 or, for the product state, when gamma
/// is outside (0, 1). gamma is ignored for the other kinds.
ControlState make_control_state(ControlKind kind, std::size_t n,
                                double gamma = 0.5);

/// Binomial coefficient as a double (exact up to n = 50 and beyond).
double binomial(std::size_t n, std::size_t k);

}  // namespace ctc
