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

// Simulating one CTC model with another, and D-CTCs with ordinary circuits.

#include <optional>
#include <string_view>
#include <vector>

#include "ctc/channels.hpp"
#include "ctc/control_state.hpp"
#include "ctc/models.hpp"

namespace ctc {

// ---------------------------------------------------------------------------
// P-CTC simulating T-CTC

struct PSimTConfig {
  /// Weight of Phi_CC' in the ancilla preparation. Unset means 1/(d_c + 1),
  /// the value at which the simulation is exact.
  std::optional<double> p;
};

/// Registers S, C, C', D. Prepares rho (x) [p Phi + (1-p) pi (x) pi], applies
/// U_SC and then Phi (x) I_D + (I - Phi) (x) X_D, runs a P-CTC with D on the
/// loop and traces out C C'.
DensityMatrix pctc_simulate_tctc(const BipartiteUnitary& u,
                                 const DensityMatrix& rho,
                                 const PSimTConfig& cfg = {});

// ---------------------------------------------------------------------------
// T-CTC simulating P-CTC

struct TSimPConfig {
  std::size_t n = 1;
};

struct TSimPResult {
  DensityMatrix state;
  /// p1 / ((2^n + 1) p0 + p1), the weight of the unwanted branch.
  double error_weight;
  double p0;
  double p1;
};

/// Registers A, R, S, C, C' on the chronology-respecting side and n qubits
/// C_1 ... C_n on the loop, coupled through
/// V = |0><0|_A (x) I + |1><1|_A (x) X^{(x)n}. Throws TargetUndefined when
/// p0 <= 1e-12.
TSimPResult tctc_simulate_pctc(const BipartiteUnitary& u,
                               const DensityMatrix& rho,
                               const TSimPConfig& cfg);

// ---------------------------------------------------------------------------
// Circuit simulation of D-CTCs

enum class CircuitMethod { full_vector, weight_mixture };

/// adopted: n controlled steps on S_1 ... S_n, then U on a fresh copy
/// S_{n+1}, output S_{n+1}. literal: n controlled steps, output S_n.
enum class CircuitMode { adopted, literal };

std::string_view to_string(CircuitMethod method);
std::string_view to_string(CircuitMode mode);

struct CircuitOptions {
  CircuitMethod method = CircuitMethod::weight_mixture;
  CircuitMode mode = CircuitMode::adopted;
  /// FullVector refuses global dimensions above this (per side).
  std::size_t full_vector_cap = 4096;
  kernels::Execution exec = kernels::Execution::parallel;
};

struct DctcSimReport {
  DensityMatrix output;
  /// Tr_C{U (rho (x) cesaro_n(omega0)) U^dagger}.
  DensityMatrix reference_formula;
  /// Tr_C{U (rho (x) P(omega0)) U^dagger} with P the fixed-point projection.
  DensityMatrix reference_fixed;
  double dist_formula;
  double dist_fixed;
  std::size_t n;
  CircuitMethod method;
  CircuitMode mode;
  /// Copies of rho consumed by the circuit.
  std::size_t copies;
};

/// Throws DimensionMismatch, or CapacityExceeded when FullVector would
/// exceed the cap.
DctcSimReport dctc_circuit_simulate(const BipartiteUnitary& u,
                                    const DensityMatrix& rho,
                                    const DensityMatrix& omega0,
                                    const ControlState& control,
                                    const CircuitOptions& options = {});

struct ControlSpec {
  ControlKind kind;
  double gamma = 0.5;
};

struct ScanRow {
  ControlSpec control;
  std::size_t n;
  double dist_formula;
  double dist_fixed;
};

/// WeightMixture runs for n = 1..n_max per control spec. Points are
/// evaluated in parallel; rows come back ordered by (spec, n).
std::vector<ScanRow> dctc_convergence_scan(const BipartiteUnitary& u,
                                           const DensityMatrix& rho,
                                           const DensityMatrix& omega0,
                                           const std::vector<ControlSpec>& kinds,
                                           std::size_t n_max);

}  // namespace ctc
