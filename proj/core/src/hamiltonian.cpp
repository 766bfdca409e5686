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

#include "dapt/hamiltonian.hpp"

#include "dapt/numerics.hpp"

#include <cmath>

namespace dapt {

CMatrix SpectralFrame::basis() const {
  CMatrix out(dim(), dim());
  Index col = 0;
  for (const auto& level : levels) {
    out.middleCols(col, level.degeneracy()) = level.block;
    col += level.degeneracy();
  }
  return out;
}

Index SpectralFrame::offset(std::size_t n) const {
  Index col = 0;
  for (std::size_t i = 0; i < n; ++i) col += levels[i].degeneracy();
  return col;
}

FunctionHamiltonian::FunctionHamiltonian(Index dim, MatrixFn h, MatrixFn dh)
    : dim_(dim), h_(std::move(h)), dh_(std::move(dh)) {
  if (!h_) throw Error(ErrorKind::kConfigError, "FunctionHamiltonian needs a callable");
}

std::optional<CMatrix> FunctionHamiltonian::derivative(double s) const {
  if (!dh_) return std::nullopt;
  return dh_(s);
}

SampledHamiltonian::SampledHamiltonian(std::vector<CMatrix> samples)
    : samples_(std::move(samples)), grid_(samples_.size()) {
  const Index d = samples_.front().rows();
  for (const auto& m : samples_) {
    if (m.rows() != d || m.cols() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "sampled Hamiltonian has inconsistent matrix shapes");
    }
  }
}

CMatrix SampledHamiltonian::at(double s) const {
  const double x = s / grid_.spacing();
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-12 && nearest >= 0.0 && nearest < static_cast<double>(samples_.size())) {
    return samples_[static_cast<std::size_t>(nearest)];
  }
  if (samples_.size() < 4) {
    // Linear interpolation is all three nodes support.
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::floor(x)), samples_.size() - 2);
    const double t = x - static_cast<double>(k);
    return (1.0 - t) * samples_[k] + t * samples_[k + 1];
  }
  CMatrix h = cubic_interpolate(std::span<const CMatrix>(samples_), x);
  return (h + h.adjoint()) * 0.5;
}

std::vector<CMatrix> sample(const Hamiltonian& h, const Grid& grid) {
  std::vector<CMatrix> out;
  out.reserve(grid.size());
  for (double s : grid.points()) out.push_back(h.at(s));
  return out;
}

}  // namespace dapt
