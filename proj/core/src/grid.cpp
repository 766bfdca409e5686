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

#include "dapt/grid.hpp"

#include "dapt/types.hpp"

namespace dapt {

Grid::Grid(std::size_t count) {
  if (count < 3) {
    throw Error(ErrorKind::kGridTooSmall, "a grid needs at least 3 nodes, got " + std::to_string(count));
  }
  const auto intervals = static_cast<double>(count - 1);
  spacing_ = 1.0 / intervals;
  points_.resize(count);
  for (std::size_t k = 0; k < count; ++k) points_[k] = static_cast<double>(k) / intervals;
  points_.back() = 1.0;
}

}  // namespace dapt
