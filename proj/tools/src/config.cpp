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

#include "dapt_tools/config.hpp"

#include "dapt/types.hpp"

#include <fstream>
#include <set>

namespace dapt::tools {

namespace {

template <typename T>
void take(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfigError, std::string("config field '") + key + "': " + e.what());
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kConfigError, what);
}

}  // namespace

void RunConfig::validate() const {
  require(model == "gamma" || model == "spin-half" || model == "file",
          "model must be gamma, spin-half or file, not '" + model + "'");
  require(model != "file" || !hamiltonian_file.empty(), "model 'file' needs hamiltonian_file");
  require(b > 0.0, "b must be positive");
  require(w > 0.0, "w must be positive");
  require(cycles > 0.0, "cycles must be positive");
  require(theta >= 0.0 && theta <= 3.141592653589793, "theta must lie in [0, pi]");
  require(v > 0.0, "v must be positive");
  require(nodes >= 3, "nodes must be at least 3");
  require(order >= 0 && order <= 2, "order must be 0, 1 or 2");
  require(degeneracy_tol > 0.0, "degeneracy_tol must be positive");
  require(rank_tol > 0.0, "rank_tol must be positive");
  require(threshold > 0.0, "threshold must be positive");
  require(max_phase_step > 0.0, "max_phase_step must be positive");
  require(workers >= 0, "workers must be non-negative");
  for (double x : v_list) require(x > 0.0, "v_list entries must be positive");
  for (double x : w_list) require(x > 0.0, "w_list entries must be positive");
}

nlohmann::json RunConfig::to_json() const {
  return {{"model", model},
          {"b", b},
          {"theta", theta},
          {"w", w},
          {"cycles", cycles},
          {"hamiltonian_file", hamiltonian_file},
          {"v", v},
          {"nodes", nodes},
          {"order", order},
          {"degeneracy_tol", degeneracy_tol},
          {"rank_tol", rank_tol},
          {"gap_floor", gap_floor},
          {"threshold", threshold},
          {"high_order", high_order},
          {"max_phase_step", max_phase_step},
          {"out", out},
          {"v_list", v_list},
          {"w_list", w_list},
          {"workers", workers},
          {"input", input}};
}

void RunConfig::merge(const nlohmann::json& j) {
  require(j.is_object(), "config must be a JSON object");
  static const std::set<std::string> known = [] {
    std::set<std::string> keys;
    const nlohmann::json defaults = RunConfig{}.to_json();
    for (const auto& [key, value] : defaults.items()) keys.insert(key);
    return keys;
  }();
  for (const auto& [key, value] : j.items()) require(known.count(key) > 0, "unknown config field '" + key + "'");
  take(j, "model", model);
  take(j, "b", b);
  take(j, "theta", theta);
  take(j, "w", w);
  take(j, "cycles", cycles);
  take(j, "hamiltonian_file", hamiltonian_file);
  take(j, "v", v);
  take(j, "nodes", nodes);
  take(j, "order", order);
  take(j, "degeneracy_tol", degeneracy_tol);
  take(j, "rank_tol", rank_tol);
  take(j, "gap_floor", gap_floor);
  take(j, "threshold", threshold);
  take(j, "high_order", high_order);
  take(j, "max_phase_step", max_phase_step);
  take(j, "out", out);
  take(j, "v_list", v_list);
  take(j, "w_list", w_list);
  take(j, "workers", workers);
  take(j, "input", input);
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfigError, "config file " + path + ": " + e.what());
  }
  base.merge(j);
  return base;
}

}  // namespace dapt::tools
