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

#include "dapt/types.hpp"
#include "dapt_tools/config.hpp"

#include <json.hpp>

#include <string_view>

namespace dapt::tools {

/// Each command writes <out>.csv and <out>.json (skipped when `out` is
/// empty) and returns the JSON summary.
nlohmann::json cmd_evolve(const RunConfig& config);
nlohmann::json cmd_holonomy(const RunConfig& config);
nlohmann::json cmd_dapt(const RunConfig& config);
nlohmann::json cmd_validate(const RunConfig& config);
nlohmann::json cmd_sweep(const RunConfig& config);
nlohmann::json cmd_fit_order(const RunConfig& config);

/// Process exit status for a failure category; 0 is reserved for success
/// and 1 for unclassified errors.
int exit_code(ErrorKind kind) noexcept;

std::string_view version() noexcept;

}  // namespace dapt::tools
