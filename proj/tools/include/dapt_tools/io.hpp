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

#pragma once

#include "dapt/hamiltonian.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace dapt::tools {

/// Plain numeric table with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; ConfigError when absent.
  std::size_t column(const std::string& name) const;
};

/// Values at 17 significant digits so that reading them back is exact.
void write_csv(const std::string& path, const Table& table);
Table read_csv(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);

/// Sampled Hamiltonian in text form. Lines starting with '#' and blank lines
/// are ignored. The first record is "<dim> <nodes>"; each node follows as its
/// s value and dim*dim row-major entries written "re,im". Nodes must sit on
/// the uniform grid s_k = k / (nodes - 1).
SampledHamiltonian read_hamiltonian_file(const std::string& path);
void write_hamiltonian_file(const std::string& path, const std::vector<CMatrix>& samples);

}  // namespace dapt::tools
