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

#include "dapt/frame.hpp"
#include "dapt/grid.hpp"
#include "dapt/hamiltonian.hpp"

#include <vector>

namespace dapt {

/// Snapshot eigensystems on every grid node with a fixed level structure
/// (d_0, d_1, ...). Immutable once built.
class SpectralPath {
 public:
  /// Throws DegeneracyChanged when the level structure differs between nodes.
  SpectralPath(Grid grid, std::vector<SpectralFrame> frames, bool analytic);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<SpectralFrame>& frames() const noexcept { return frames_; }
  const SpectralFrame& operator[](std::size_t k) const { return frames_[k]; }

  std::size_t level_count() const noexcept { return dims_.size(); }
  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index degeneracy(std::size_t n) const { return dims_[n]; }
  /// Largest degeneracy; the number of initial-condition labels of the ansatz.
  Index d_max() const noexcept { return d_max_; }
  Index dim() const noexcept { return frames_.front().dim(); }
  Index offset(std::size_t n) const { return offsets_[n]; }
  bool analytic() const noexcept { return analytic_; }

  double energy(std::size_t n, std::size_t k) const { return frames_[k].levels[n].energy; }
  const CMatrix& block(std::size_t n, std::size_t k) const { return frames_[k].levels[n].block; }

 private:
  Grid grid_;
  std::vector<SpectralFrame> frames_;
  std::vector<Index> dims_;
  std::vector<Index> offsets_;
  Index d_max_ = 0;
  bool analytic_ = false;
};

/// Diagonalises H(s_k) on every node and clusters eigenvalues into levels when
/// |E_i - E_j| <= degeneracy_tol * max(1, |E_i|). The eigenvector gauge is
/// whatever the eigensolver returns.
SpectralPath snapshot_eigensystem(const Hamiltonian& h, const Grid& grid, double degeneracy_tol = 1e-8);

/// Discrete parallel transport of each level's frame: block(k+1) is rotated by
/// the unitary that makes block(k)^dagger block(k+1) Hermitian positive
/// (orthogonal Procrustes). Frame 0 is untouched. Throws RankDeficientOverlap
/// when an overlap has a singular value below `rank_tol`.
SpectralPath smooth_gauge(const SpectralPath& path, double rank_tol = 1e-3);

/// Path built from the Hamiltonian's analytic eigensystem; ConfigError if the
/// Hamiltonian has none.
SpectralPath analytic_path(const Hamiltonian& h, const Grid& grid);

/// Analytic frames when available, otherwise diagonalise and smooth.
SpectralPath build_spectral_path(const Hamiltonian& h, const Grid& grid, double degeneracy_tol = 1e-8,
                                 double rank_tol = 1e-3);

}  // namespace dapt
