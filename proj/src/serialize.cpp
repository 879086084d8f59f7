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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "teur/expcli.hpp"

namespace teur {

using json = nlohmann::ordered_json;

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

// Value as printed, so JSON and CSV carry the same digits.
double rounded(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

}  // namespace

void validate_rows(const SweepTable& table) {
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const SweepRow& row = table.rows[r];
    if (row.size() != table.columns.size()) throw std::invalid_argument("sweep row has the wrong number of values");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (table.columns[i].rfind("gap_", 0) != 0 || !row[i]) continue;
      if (*row[i] < -kGapTolerance) {
        throw std::invalid_argument("row " + std::to_string(r) + ": " + table.columns[i] + " = " +
                                    format_number(*row[i]) + " violates the bound");
      }
    }
  }
}

void write_csv(std::ostream& out, const SweepTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const SweepRow& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i]) out << format_number(*row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const SweepTable& table) {
  json rows = json::array();
  for (const SweepRow& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[table.columns[i]] = row[i] ? json(rounded(*row[i])) : json(nullptr);
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

void serialize(const SweepTable& table, OutputFormat format, const std::string& path) {
  validate_rows(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  if (format == OutputFormat::kCsv) {
    write_csv(out, table);
  } else {
    write_json(out, table);
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

SweepTable read_csv(std::istream& in) {
  SweepTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) throw std::invalid_argument("read_csv: missing header");
  table.columns = split(line);
  table.game = std::find(table.columns.begin(), table.columns.end(), "rhs_thm2") != table.columns.end()
                   ? GameKind::kBipartite
                   : GameKind::kTripartite;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.columns.size()) throw std::invalid_argument("read_csv: ragged row");
    SweepRow row;
    for (const auto& cell : cells) {
      if (cell.empty()) {
        row.emplace_back();
      } else {
        row.emplace_back(std::stod(cell));
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string report_to_json(const BoundReport& report) {
  json j;
  j["game"] = report.kind == GameKind::kTripartite ? "tripartite" : "bipartite";
  j["lhs"] = rounded(report.lhs);
  json bounds = json::object();
  for (const auto& v : report.variants) bounds[v.name] = {{"rhs", rounded(v.rhs)}, {"gap", rounded(v.gap)}};
  j["bounds"] = std::move(bounds);
  json terms = json::object();
  for (const auto& [name, value] : report.terms) terms[name] = rounded(value);
  j["terms"] = std::move(terms);
  j["saturation_hypothesis"] = report.saturation_hypothesis;
  j["saturated"] = report.saturated;
  return j.dump(2);
}

}  // namespace teur
