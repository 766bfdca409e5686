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

#include <json.hpp>

#include <string>
#include <vector>

namespace dapt::tools {

/// Parameters shared by every subcommand. Built from defaults, then a JSON
/// file, then command-line flags, each layer overriding the previous one.
struct RunConfig {
  /// "gamma", "spin-half" or "file".
  std::string model = "gamma";
  double b = 1.0;
  double theta = 1.0471975511965976;
  double w = 0.01;
  double cycles = 1.0;
  /// Sampled Hamiltonian for model "file"; its grid replaces `nodes`.
  std::string hamiltonian_file;
  /// Sweep rate for model "file". The built-in models derive v from w.
  double v = 0.01;
  int nodes = 2001;
  int order = 1;
  double degeneracy_tol = 1e-8;
  double rank_tol = 1e-3;
  /// Negative selects 1e-6 * max|E|.
  double gap_floor = -1.0;
  double threshold = 0.1;
  /// Fourth-order transport and stencils instead of second order.
  bool high_order = false;
  double max_phase_step = 5e-3;
  /// Output prefix: <out>.csv and <out>.json.
  std::string out;
  std::vector<double> v_list;
  std::vector<double> w_list;
  int workers = 0;
  /// Sweep CSV read by fit-order.
  std::string input;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  nlohmann::json to_json() const;
  /// Fields present in `j` override the current values; unknown keys are errors.
  void merge(const nlohmann::json& j);
};

RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace dapt::tools
