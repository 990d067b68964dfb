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

// Batch experiments: a JSON config names a model, a unitary, an input state
// and model parameters; run() produces a JSON report and scan() a CSV trace.
//
// Operator specs are either a name or an object:
//   unitary: "identity" | "swap" | "cnot" | "cz"            (qubits, d_s = d_c = 2)
//            {"dims": [d_s, d_c], "data": ...}               (inline)
//            {"haar": [d_s, d_c]}                            (seeded random)
//   states:  "zero" | "mixed" (any dimension) | "plus" (qubit)
//            {"dims": [...], "data": ...} | {"random": d}

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctc/serialization.hpp"

namespace ctc {

enum class Model {
  pctc,
  tctc,
  tctc_mc,
  dctc,
  cross_p2t,
  cross_t2p,
  dctc_circuit,
  fixpoint,
  maxent
};

std::string_view to_string(Model model);

/// A named or inline operator, kept verbatim for canonical echoing.
struct OperatorSpec {
  json source;
};

struct SweepSpec {
  std::string over;  // "n" or "gamma"
  std::vector<double> values;
};

struct ExperimentParams {
  std::optional<std::size_t> n;
  std::optional<double> gamma;
  std::optional<double> p;
  std::optional<std::size_t> samples;
  std::optional<std::string> control;
  std::optional<OperatorSpec> omega0;
  std::optional<std::string> policy;  // "max_entropy" | "project_from"
  std::optional<std::string> method;  // "weight_mixture" | "full_vector"
  std::optional<bool> literal;
  std::optional<SweepSpec> sweep;
};

struct ExperimentTolerances {
  std::optional<double> null_projection;
  std::optional<double> consistency;
};

struct ExperimentConfig {
  Model model = Model::pctc;
  OperatorSpec unitary;
  OperatorSpec rho;
  ExperimentParams params;
  std::uint64_t seed = 0;
  ExperimentTolerances tolerances;
};

/// Schema and consistency checks, including building the operators.
/// Throws ConfigError.
ExperimentConfig parse_config(const json& j);
ExperimentConfig parse_config_text(const std::string& text);

/// Canonical form: sorted keys, only the fields that were given.
json serialize_config(const ExperimentConfig& cfg);

struct RunOptions {
  /// Adds "wall_time_s" to the report. Everything else in a report is a
  /// deterministic function of (config, seed, version).
  bool include_timing = true;
};

struct RunResult {
  json report;
  /// Empty on success; otherwise the error code also stored in the report.
  std::string error_code;
};

/// Model errors are captured in the report (status "error"); ConfigError
/// propagates.
RunResult run(const ExperimentConfig& cfg, const RunOptions& options = {});

struct ScanPoint {
  std::optional<std::size_t> n;
  std::optional<double> gamma;
  std::optional<double> dist_formula;
  std::optional<double> dist_fixed;
  std::optional<double> error_weight;
  std::optional<double> entropy;
};

/// Needs params.sweep. Supported for dctc_circuit, cross_t2p and fixpoint.
/// Points run in parallel; results are ordered by sweep index. Throws
/// ConfigError or the model error of the first failing point.
std::vector<ScanPoint> scan(const ExperimentConfig& cfg);

/// Header plus one LF-terminated line per point, 17 significant digits,
/// blank fields where a column does not apply.
std::string scan_to_csv(const std::vector<ScanPoint>& points);

inline constexpr const char* kCsvHeader =
    "n,gamma,dist_formula,dist_fixed,error_weight,entropy";

std::string library_version();

}  // namespace ctc
