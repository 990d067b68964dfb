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

#include "ctc/serialization.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "ctc/errors.hpp"

namespace ctc {
namespace {

Complex entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw ConfigError("matrix entries must be [re, im] pairs of numbers");
  const Complex z{e[0].get<double>(), e[1].get<double>()};
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ConfigError("matrix entries must be finite");
  return z;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m, const Dims& dims) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return json{{"dims", dims}, {"data", std::move(rows)}};
}

json matrix_to_json(const ComplexMatrix& m) {
  return matrix_to_json(m, Dims{static_cast<std::size_t>(m.rows())});
}

json density_to_json(const DensityMatrix& rho) {
  return matrix_to_json(rho.matrix(), rho.dims());
}

ParsedMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("data"))
    throw ConfigError("inline matrix needs a \"data\" field");
  const json& data = j.at("data");
  if (!data.is_array() || data.empty())
    throw ConfigError("matrix \"data\" must be a non-empty array");

  std::vector<Complex> flat;
  Eigen::Index rows = 0, cols = 0;
  const bool nested = data[0].is_array() && !data[0].empty() && data[0][0].is_array();
  if (nested) {
    rows = static_cast<Eigen::Index>(data.size());
    cols = static_cast<Eigen::Index>(data[0].size());
    for (const json& row : data) {
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
        throw ConfigError("matrix rows must all have the same length");
      for (const json& e : row) flat.push_back(entry_from_json(e));
    }
  } else {
    for (const json& e : data) flat.push_back(entry_from_json(e));
    const auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (side * side != static_cast<Eigen::Index>(flat.size()))
      throw ConfigError("flat matrix data must hold a square number of entries");
    rows = cols = side;
  }
  if (rows != cols) throw ConfigError("matrices must be square");

  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = flat[static_cast<std::size_t>(i * cols + k)];

  Dims dims;
  if (j.contains("dims")) {
    const json& d = j.at("dims");
    if (!d.is_array() || d.empty())
      throw ConfigError("\"dims\" must be a non-empty array");
    for (const json& x : d) {
      if (!x.is_number_integer() || x.get<std::int64_t>() <= 0)
        throw ConfigError("\"dims\" entries must be positive integers");
      dims.push_back(x.get<std::size_t>());
    }
    if (dims_product(dims) != static_cast<std::size_t>(rows))
      throw ConfigError("\"dims\" multiply to " + std::to_string(dims_product(dims)) +
                        " but the matrix is " + std::to_string(rows) + "x" +
                        std::to_string(cols));
  } else {
    dims = {static_cast<std::size_t>(rows)};
  }
  return {std::move(m), std::move(dims)};
}

}  // namespace ctc
