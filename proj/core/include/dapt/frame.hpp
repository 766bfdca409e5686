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

#include <vector>

namespace dapt {

/// One degenerate eigenspace: its energy and an orthonormal basis stored as
/// the columns of `block`.
struct Level {
  double energy = 0.0;
  CMatrix block;

  Index degeneracy() const noexcept { return block.cols(); }
};

/// Snapshot eigensystem of H(s), levels ordered by increasing energy.
struct SpectralFrame {
  double s = 0.0;
  std::vector<Level> levels;

  Index dim() const noexcept { return levels.empty() ? 0 : levels.front().block.rows(); }
  /// All eigenvectors side by side, level by level.
  CMatrix basis() const;
  /// Column offset of level n inside `basis()`.
  Index offset(std::size_t n) const;
};

}  // namespace dapt
