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

#include "ctc/control_state.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "ctc/errors.hpp"

namespace ctc {

std::string_view to_string(ControlKind kind) {
  switch (kind) {
    case ControlKind::dicke:
      return "dicke";
    case ControlKind::staircase:
      return "staircase";
    case ControlKind::product:
      return "product";
  }
  return "unknown";
}

ControlKind parse_control_kind(std::string_view name) {
  if (name == "dicke") return ControlKind::dicke;
  if (name == "staircase") return ControlKind::staircase;
  if (name == "product") return ControlKind::product;
  throw InvalidArgument("unknown control kind '" + std::string(name) +
                        "' (expected dicke, staircase or product)");
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

ControlState make_control_state(ControlKind kind, std::size_t n, double gamma) {
  if (n == 0) throw InvalidArgument("control register needs n >= 1");
  if (kind == ControlKind::product && !(gamma > 0.0 && gamma < 1.0))
    throw InvalidArgument("product control needs gamma in (0, 1), got " +
                          std::to_string(gamma));
  return ControlState(kind, n, gamma);
}

double ControlState::amplitude(std::uint64_t bits) const {
  if (n_ < 64 && (bits >> n_) != 0) return 0.0;
  const auto w = static_cast<std::size_t>(std::popcount(bits));
  const double np1 = static_cast<double>(n_ + 1);
  switch (kind_) {
    case ControlKind::dicke:
      return 1.0 / std::sqrt(np1 * binomial(n_, w));
    case ControlKind::staircase: {
      // 1^w 0^(n-w) with F_1 leftmost: the top w bits set.
      const std::uint64_t low = n_ - w >= 64 ? 0 : (std::uint64_t{1} << (n_ - w)) - 1;
      const std::uint64_t mask = (n_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1);
      return bits == (mask & ~low) ? 1.0 / std::sqrt(np1) : 0.0;
    }
    case ControlKind::product:
      return std::pow(std::sqrt(gamma_), static_cast<double>(n_ - w)) *
             std::pow(std::sqrt(1.0 - gamma_), static_cast<double>(w));
  }
  return 0.0;
}

ComplexVector ControlState::amplitudes() const {
  if (n_ > 24)
    throw CapacityExceeded("control amplitude vector for n = " +
                           std::to_string(n_) + " exceeds 2^24 entries");
  const std::uint64_t size = std::uint64_t{1} << n_;
  ComplexVector a(static_cast<Eigen::Index>(size));
  for (std::uint64_t b = 0; b < size; ++b)
    a(static_cast<Eigen::Index>(b)) = amplitude(b);
  return a;
}

std::vector<double> ControlState::weight_distribution() const {
  std::vector<double> p(n_ + 1, 0.0);
  if (kind_ == ControlKind::product) {
    for (std::size_t m = 0; m <= n_; ++m)
      p[m] = binomial(n_, m) * std::pow(1.0 - gamma_, static_cast<double>(m)) *
             std::pow(gamma_, static_cast<double>(n_ - m));
  } else {
    for (double& x : p) x = 1.0 / static_cast<double>(n_ + 1);
  }
  return p;
}

std::vector<double> ControlState::last_bit_given_weight() const {
  std::vector<double> q(n_ + 1, 0.0);
  if (kind_ == ControlKind::staircase) {
    q[n_] = 1.0;
  } else {
    // Exchangeable within each weight class.
    for (std::size_t m = 0; m <= n_; ++m)
      q[m] = static_cast<double>(m) / static_cast<double>(n_);
  }
  return q;
}

}  // namespace ctc
