// Copyright 2026 The teur Authors
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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "teur/expcli.hpp"

namespace teur {

// Format: [[[re, im], [re, im], ...], ...], one inner array per row.
Matrix parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON: expected a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j[0].is_array() ? j[0].size() : 0);
  if (cols == 0) throw std::invalid_argument("matrix JSON: empty row");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix JSON: rows differ in length");
    }
    for (Index k = 0; k < cols; ++k) {
      const auto& entry = row[static_cast<std::size_t>(k)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw std::invalid_argument("matrix JSON: entries must be [re, im] pairs");
      }
      m(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

Matrix read_matrix_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read matrix file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_json(ss.str());
}

std::string matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

}  // namespace teur
