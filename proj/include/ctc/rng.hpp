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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace ctc {

/// Seedable random stream. A stream is identified by (root seed, stream path);
/// `split(k)` derives child k from that identity alone, so children do not
/// depend on how much of the parent has been consumed. Identical seeds give
/// bit-identical sequences on one platform.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+splitmix64";
  static constexpr int kVersion = 1;

  explicit Rng(std::uint64_t seed);

  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  double uniform();
  double normal();
  /// Standard complex Gaussian, E|z|^2 = 1.
  std::complex<double> complex_normal();

  std::uint64_t identity() const noexcept { return key_; }

 private:
  struct Key {
    std::uint64_t value;
  };
  explicit Rng(Key key);

  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ctc
