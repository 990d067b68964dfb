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

#include <stdexcept>
#include <string>

namespace ctc {

/// Base of every error raised by the library. `code()` is the stable
/// snake_case identifier written into experiment reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : Error("dimension_mismatch", what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error("invalid_argument", what) {}
};

/// A matrix failed the density-matrix, pure-state, unitary or CPTP checks.
class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what)
      : Error("invalid_state", what) {}
};

/// Postselection onto the maximally entangled state has (numerically) zero
/// probability, so the postselected evolution is undefined.
class NullProjection : public Error {
 public:
  explicit NullProjection(double normalization)
      : Error("null_projection",
              "postselection probability " + std::to_string(normalization) +
                  " is below the null threshold"),
        normalization_(normalization) {}

  double normalization() const noexcept { return normalization_; }

 private:
  double normalization_;
};

/// The postselected target that a simulation should approximate is itself
/// undefined (p0 at or below the null threshold).
class TargetUndefined : public Error {
 public:
  explicit TargetUndefined(double p0)
      : Error("target_undefined",
              "p0 = " + std::to_string(p0) +
                  " leaves the postselected target undefined"),
        p0_(p0) {}

  double p0() const noexcept { return p0_; }

 private:
  double p0_;
};

class InconsistentSigma : public Error {
 public:
  explicit InconsistentSigma(double residual)
      : Error("inconsistent_sigma",
              "supplied CTC state is not a fixed point (residual " +
                  std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class DecompositionFailed : public Error {
 public:
  DecompositionFailed(const std::string& what, double residual)
      : Error("decomposition_failed", what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double gradient_norm)
      : Error("non_convergence", what), gradient_norm_(gradient_norm) {}

  double gradient_norm() const noexcept { return gradient_norm_; }

 private:
  double gradient_norm_;
};

class AllWeightsZero : public Error {
 public:
  explicit AllWeightsZero(double weight_sum)
      : Error("all_weights_zero",
              "importance weights sum to " + std::to_string(weight_sum)) {}
};

/// FullVector circuit simulation refused because the global register would
/// exceed the configured dimension cap.
/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config_error", what) {}
};

class CapacityExceeded : public Error {
 public:
  explicit CapacityExceeded(const std::string& what)
      : Error("capacity_exceeded", what) {}
};

}  // namespace ctc
