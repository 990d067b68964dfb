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

#include <optional>
#include <vector>

#include "ctc/qlinalg.hpp"

namespace ctc {

namespace tol {
inline constexpr double kTracePreservation = 1e-9;
inline constexpr double kChoiEigenvalue = -1e-9;
}  // namespace tol

/// Unitary interaction on S (x) C, S first in kron order. Also used for any
/// bipartite unitary where the first factor is "chronology respecting" and
/// the second is the register that loops back.
class BipartiteUnitary {
 public:
  /// Throws DimensionMismatch or InvalidState (U U^dagger != I).
  BipartiteUnitary(ComplexMatrix matrix, std::size_t d_s, std::size_t d_c);

  static BipartiteUnitary identity(std::size_t d_s, std::size_t d_c);
  static BipartiteUnitary swap(std::size_t d);
  /// S controls an X on C (qubits).
  static BipartiteUnitary cnot();
  static BipartiteUnitary cz();
  /// u_s (x) I_C.
  static BipartiteUnitary local(const ComplexMatrix& u_s, std::size_t d_c);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t d_s() const noexcept { return d_s_; }
  std::size_t d_c() const noexcept { return d_c_; }
  std::size_t dim() const noexcept { return d_s_ * d_c_; }

  /// B_S = Tr_C U.
  ComplexMatrix trace_over_c() const;
  /// Tr_C{U (rho (x) sigma) U^dagger}.
  ComplexMatrix evolve_s(const ComplexMatrix& rho_s,
                         const ComplexMatrix& sigma_c) const;

 private:
  ComplexMatrix matrix_;
  std::size_t d_s_;
  std::size_t d_c_;
};

/// Linear CPTP map on d x d operators, stored as the d^2 x d^2 transfer
/// matrix acting on column-stacked vec(X) (vec(X)[j*d + i] = X(i, j)).
class QuantumChannel {
 public:
  /// Throws InvalidState if sum K^dagger K != I within tolerance.
  static QuantumChannel from_kraus(std::vector<ComplexMatrix> kraus);
  /// Throws InvalidState on trace-preservation or Choi positivity failure.
  static QuantumChannel from_transfer(ComplexMatrix transfer);

  static QuantumChannel identity(std::size_t d);
  static QuantumChannel unitary(const ComplexMatrix& v);
  /// omega -> Tr(omega) rho.
  static QuantumChannel constant(const DensityMatrix& rho);

  std::size_t d() const noexcept { return d_; }
  const ComplexMatrix& transfer() const noexcept { return transfer_; }
  const std::optional<std::vector<ComplexMatrix>>& kraus() const noexcept {
    return kraus_;
  }

  ComplexMatrix choi() const;
  /// Largest |(N^dagger(I) - I)_ij|.
  double trace_preservation_defect() const;
  double choi_min_eigenvalue() const;

  /// Raw action on an arbitrary d x d operator, no validation.
  ComplexMatrix act(const ComplexMatrix& x) const;

  /// this after `first`: X -> this(first(X)).
  QuantumChannel after(const QuantumChannel& first) const;
  /// gamma * id + (1 - gamma) * this.
  QuantumChannel damped(double gamma) const;

 private:
  QuantumChannel(std::size_t d, ComplexMatrix transfer,
                 std::optional<std::vector<ComplexMatrix>> kraus);

  std::size_t d_;
  ComplexMatrix transfer_;
  std::optional<std::vector<ComplexMatrix>> kraus_;
};

ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix unvectorize(const ComplexVector& v, std::size_t d);

/// N_{U,rho}(omega) = Tr_S{U (rho (x) omega) U^dagger}.
QuantumChannel induced_channel(const BipartiteUnitary& u,
                               const DensityMatrix& rho_s);

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& omega);

/// (1/(n+1)) sum_{i=0}^{n} N^i(omega).
DensityMatrix cesaro_average(const QuantumChannel& ch,
                             const DensityMatrix& omega, std::size_t n);

/// n applications of omega -> gamma omega + (1 - gamma) N(omega),
/// 0 < gamma < 1.
DensityMatrix krasnoselskij_iterate(const QuantumChannel& ch,
                                    const DensityMatrix& omega, double gamma,
                                    std::size_t n);

/// Trace distance between sigma and N(sigma).
double verify_consistency(const QuantumChannel& ch, const DensityMatrix& sigma);

}  // namespace ctc
