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

#include "dapt/types.hpp"

namespace dapt {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kNotAntiHermitian: return "NotAntiHermitian";
    case ErrorKind::kNotHermitian: return "NonHermitianInput";
    case ErrorKind::kNonUnitaryInitial: return "NonUnitaryInitial";
    case ErrorKind::kGridTooSmall: return "GridTooSmall";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kDegeneracyChanged: return "DegeneracyChanged";
    case ErrorKind::kRankDeficientOverlap: return "RankDeficientOverlap";
    case ErrorKind::kGapCollapse: return "GapCollapse";
    case ErrorKind::kBadInitialCondition: return "BadInitialCondition";
    case ErrorKind::kNotGroundStart: return "NotGroundStart";
    case ErrorKind::kStepTooLarge: return "StepTooLarge";
    case ErrorKind::kInsufficientSweep: return "InsufficientSweep";
    case ErrorKind::kConfigError: return "ConfigError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dapt
