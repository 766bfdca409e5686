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

#include <cstddef>
#include <span>
#include <vector>

namespace dapt {

/// Uniform grid on the rescaled protocol time s in [0, 1].
class Grid {
 public:
  /// Requires count >= 3.
  explicit Grid(std::size_t count);

  std::size_t size() const noexcept { return points_.size(); }
  double spacing() const noexcept { return spacing_; }
  double operator[](std::size_t k) const { return points_[k]; }
  std::span<const double> points() const noexcept { return points_; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.size() == b.size(); }

 private:
  std::vector<double> points_;
  double spacing_;
};

}  // namespace dapt
