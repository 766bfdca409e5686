// Copyright 2026 The dapt Authors
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

#include "dapt_tools/io.hpp"

#include "dapt/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dapt::tools {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

double parse_double(const std::string& token, const std::string& where) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size()) throw Error(ErrorKind::kIoError, where + ": bad number '" + token + "'");
  return x;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw Error(ErrorKind::kConfigError, "table has no column '" + name + "'");
}

void write_csv(const std::string& path, const Table& table) {
  auto out = open_for_write(path);
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::kIoError, "write failed for " + path);
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path);
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kIoError, path + " is empty");
  table.columns = split(line, ',');
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != table.columns.size()) {
      throw Error(ErrorKind::kIoError, path + ":" + std::to_string(lineno) + ": wrong number of cells");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_double(cell, path + ":" + std::to_string(lineno)));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIoError, "write failed for " + path);
}

SampledHamiltonian read_hamiltonian_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open Hamiltonian file " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) tokens.push_back(token);
  }
  if (tokens.size() < 2) throw Error(ErrorKind::kIoError, path + ": missing '<dim> <nodes>' header");
  const double dim_value = parse_double(tokens[0], path);
  const double node_value = parse_double(tokens[1], path);
  if (dim_value < 1 || node_value < 3 || dim_value != std::floor(dim_value) || node_value != std::floor(node_value)) {
    throw Error(ErrorKind::kIoError, path + ": header needs a positive dimension and at least 3 nodes");
  }
  const auto dim = static_cast<Index>(dim_value);
  const auto nodes = static_cast<std::size_t>(node_value);
  const std::size_t per_node = 1 + static_cast<std::size_t>(dim * dim);
  if (tokens.size() != 2 + nodes * per_node) {
    throw Error(ErrorKind::kIoError, path + ": expected " + std::to_string(nodes * per_node) + " values after the header, found " +
                                         std::to_string(tokens.size() - 2));
  }
  const Grid grid(nodes);
  std::vector<CMatrix> samples;
  samples.reserve(nodes);
  std::size_t pos = 2;
  for (std::size_t k = 0; k < nodes; ++k) {
    const std::string where = path + " node " + std::to_string(k);
    const double s = parse_double(tokens[pos++], where);
    if (std::abs(s - grid[k]) > 1e-9) {
      throw Error(ErrorKind::kIoError, where + ": s=" + tokens[pos - 1] + " is off the uniform grid");
    }
    CMatrix h(dim, dim);
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) {
        const auto parts = split(tokens[pos++], ',');
        if (parts.size() != 2) throw Error(ErrorKind::kIoError, where + ": entries must be written re,im");
        h(i, j) = Complex(parse_double(parts[0], where), parse_double(parts[1], where));
      }
    }
    samples.push_back(std::move(h));
  }
  return SampledHamiltonian(std::move(samples));
}

void write_hamiltonian_file(const std::string& path, const std::vector<CMatrix>& samples) {
  if (samples.size() < 3) throw Error(ErrorKind::kGridTooSmall, "need at least 3 samples");
  auto out = open_for_write(path);
  const Grid grid(samples.size());
  out << samples.front().rows() << ' ' << samples.size() << '\n';
  for (std::size_t k = 0; k < samples.size(); ++k) {
    out << format_double(grid[k]);
    for (Index i = 0; i < samples[k].rows(); ++i) {
      for (Index j = 0; j < samples[k].cols(); ++j) {
        out << ' ' << format_double(samples[k](i, j).real()) << ',' << format_double(samples[k](i, j).imag());
      }
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::kIoError, "write failed for " + path);
}

}  // namespace dapt::tools
