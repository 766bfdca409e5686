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

#include "dapt/spectral.hpp"

#include "dapt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dapt {

namespace {

std::string dims_to_string(const std::vector<Index>& dims) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ')';
  return os.str();
}

std::vector<Index> level_dims(const SpectralFrame& frame) {
  std::vector<Index> dims;
  dims.reserve(frame.levels.size());
  for (const auto& level : frame.levels) dims.push_back(level.degeneracy());
  return dims;
}

}  // namespace

SpectralPath::SpectralPath(Grid grid, std::vector<SpectralFrame> frames, bool analytic)
    : grid_(std::move(grid)), frames_(std::move(frames)), analytic_(analytic) {
  if (frames_.size() != grid_.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "one spectral frame per grid node is required");
  }
  dims_ = level_dims(frames_.front());
  for (std::size_t k = 1; k < frames_.size(); ++k) {
    const auto dims = level_dims(frames_[k]);
    if (dims != dims_) {
      throw Error(ErrorKind::kDegeneracyChanged, "level structure " + dims_to_string(dims_) + " at s=0 became " +
                                                     dims_to_string(dims) + " at s=" + std::to_string(grid_[k]));
    }
  }
  offsets_.resize(dims_.size());
  Index col = 0;
  for (std::size_t n = 0; n < dims_.size(); ++n) {
    offsets_[n] = col;
    col += dims_[n];
  }
  d_max_ = *std::max_element(dims_.begin(), dims_.end());
}

SpectralPath snapshot_eigensystem(const Hamiltonian& h, const Grid& grid, double degeneracy_tol) {
  if (!(degeneracy_tol > 0.0)) throw Error(ErrorKind::kConfigError, "degeneracy tolerance must be positive");
  std::vector<SpectralFrame> frames;
  frames.reserve(grid.size());
  for (double s : grid.points()) {
    const CMatrix hs = h.at(s);
    if (hs.rows() != hs.cols() || hs.rows() != h.dim()) {
      throw Error(ErrorKind::kDimensionMismatch, "H(s) has the wrong shape");
    }
    if (hermiticity_error(hs) > 1e-12 * std::max(1.0, hs.norm())) {
      throw Error(ErrorKind::kNotHermitian, "H(s) is not Hermitian at s=" + std::to_string(s));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hs);
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    SpectralFrame frame;
    frame.s = s;
    Index start = 0;
    const Index d = hs.rows();
    for (Index i = 1; i <= d; ++i) {
      const bool split =
          i == d || std::abs(values(i) - values(i - 1)) > degeneracy_tol * std::max(1.0, std::abs(values(i - 1)));
      if (!split) continue;
      Level level;
      level.energy = values.segment(start, i - start).mean();
      level.block = vectors.middleCols(start, i - start);
      frame.levels.push_back(std::move(level));
      start = i;
    }
    frames.push_back(std::move(frame));
  }
  return SpectralPath(grid, std::move(frames), false);
}

SpectralPath smooth_gauge(const SpectralPath& path, double rank_tol) {
  std::vector<SpectralFrame> frames = path.frames();
  for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
    for (std::size_t n = 0; n < path.level_count(); ++n) {
      const CMatrix overlap = frames[k].levels[n].block.adjoint() * frames[k + 1].levels[n].block;
      double min_sv = 0.0;
      const CMatrix w = polar_unitary(overlap, &min_sv);
      if (min_sv < rank_tol) {
        throw Error(ErrorKind::kRankDeficientOverlap,
                    "frame overlap of level " + std::to_string(n) + " is singular between s=" +
                        std::to_string(frames[k].s) + " and s=" + std::to_string(frames[k + 1].s) +
                        " (grid too coarse or levels crossing)");
      }
      frames[k + 1].levels[n].block = frames[k + 1].levels[n].block * w.adjoint();
    }
  }
  return SpectralPath(path.grid(), std::move(frames), path.analytic());
}

SpectralPath analytic_path(const Hamiltonian& h, const Grid& grid) {
  std::vector<SpectralFrame> frames;
  frames.reserve(grid.size());
  for (double s : grid.points()) {
    auto frame = h.analytic_frame(s);
    if (!frame) throw Error(ErrorKind::kConfigError, "Hamiltonian provides no analytic eigensystem");
    frame->s = s;
    frames.push_back(std::move(*frame));
  }
  return SpectralPath(grid, std::move(frames), true);
}

SpectralPath build_spectral_path(const Hamiltonian& h, const Grid& grid, double degeneracy_tol, double rank_tol) {
  if (h.analytic_frame(0.0)) return analytic_path(h, grid);
  return smooth_gauge(snapshot_eigensystem(h, grid, degeneracy_tol), rank_tol);
}

}  // namespace dapt
