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

// JSON layout for operators:
//
//   {"dims": [2, 2], "data": [[[re, im], [re, im], ...], ...]}
//
// "data" holds the rows in order; each entry is an [re, im] pair. A flat
// row-major list of pairs is accepted on input as well.

#include <json.hpp>

#include "ctc/qlinalg.hpp"

namespace ctc {

using json = nlohmann::json;

json matrix_to_json(const ComplexMatrix& m, const Dims& dims);
json matrix_to_json(const ComplexMatrix& m);
json density_to_json(const DensityMatrix& rho);

struct ParsedMatrix {
  ComplexMatrix matrix;
  Dims dims;
};

/// Throws ConfigError on malformed input.
ParsedMatrix matrix_from_json(const json& j);

}  // namespace ctc
