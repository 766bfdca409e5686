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

#include "dapt/couplings.hpp"

#include <algorithm>
#include <cmath>

namespace dapt {

namespace {

std::vector<std::vector<CMatrix>> zero_blocks(const SpectralPath& path) {
  const std::size_t levels = path.level_count();
  std::vector<std::vector<CMatrix>> blocks(path.grid().size());
  for (auto& node : blocks) {
    node.reserve(levels * levels);
    for (std::size_t n = 0; n < levels; ++n) {
      for (std::size_t m = 0; m < levels; ++m) node.push_back(CMatrix::Zero(path.degeneracy(n), path.degeneracy(m)));
    }
  }
  return blocks;
}

std::vector<CMatrix> block_derivative(const SpectralPath& path, std::size_t m, Stencil stencil) {
  std::vector<CMatrix> samples;
  samples.reserve(path.grid().size());
  for (std::size_t k = 0; k < path.grid().size(); ++k) samples.push_back(path.block(m, k));
  return central_derivative(samples, path.grid().spacing(), stencil);
}

std::vector<std::vector<CMatrix>> midpoint_generators(const SpectralPath& path) {
  const double h = path.grid().spacing();
  std::vector<std::vector<CMatrix>> out(path.level_count());
  for (std::size_t n = 0; n < path.level_count(); ++n) {
    out[n].reserve(path.grid().size() - 1);
    for (std::size_t k = 0; k + 1 < path.grid().size(); ++k) {
      const CMatrix overlap = path.block(n, k).adjoint() * path.block(n, k + 1);
      const CMatrix link = polar_unitary(overlap).conjugate();
      out[n].push_back(unitary_log(link) / h);
    }
  }
  return out;
}

}  // namespace

CouplingSet::CouplingSet(const SpectralPath& path, std::vector<std::vector<CMatrix>> blocks,
                         std::vector<std::vector<CMatrix>> midpoint, bool conjugated)
    : grid_(path.grid()),
      levels_(path.level_count()),
      dims_(path.dims()),
      blocks_(std::move(blocks)),
      midpoint_(std::move(midpoint)),
      conjugated_(conjugated) {
  energies_.resize(grid_.size());
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    energies_[k].resize(levels_);
    for (std::size_t n = 0; n < levels_; ++n) energies_[k][n] = path.energy(n, k);
  }
  if (midpoint_.empty()) midpoint_.resize(levels_);
}

std::vector<CMatrix> CouplingSet::nodal_connection(std::size_t n) const {
  std::vector<CMatrix> out;
  out.reserve(grid_.size());
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    out.push_back(conjugated_ ? plain(n, n, k) : CMatrix(plain(n, n, k).conjugate()));
  }
  return out;
}

std::vector<CMatrix> hamiltonian_derivative(const Hamiltonian& h, const Grid& grid, Stencil stencil) {
  if (h.derivative(0.0)) {
    std::vector<CMatrix> out;
    out.reserve(grid.size());
    for (double s : grid.points()) out.push_back(*h.derivative(s));
    return out;
  }
  return central_derivative(sample(h, grid), grid.spacing(), stencil);
}

CouplingSet coupling_offdiag(const SpectralPath& path, std::span<const CMatrix> dh, double gap_floor) {
  if (dh.size() != path.grid().size()) {
    throw Error(ErrorKind::kDimensionMismatch, "dH/ds must be sampled on the path grid");
  }
  const std::size_t levels = path.level_count();
  if (gap_floor < 0.0) {
    double emax = 0.0;
    for (std::size_t k = 0; k < path.grid().size(); ++k) {
      for (std::size_t n = 0; n < levels; ++n) emax = std::max(emax, std::abs(path.energy(n, k)));
    }
    gap_floor = 1e-6 * std::max(emax, 1e-300);
  }
  auto blocks = zero_blocks(path);
  for (std::size_t k = 0; k < path.grid().size(); ++k) {
    for (std::size_t n = 0; n < levels; ++n) {
      for (std::size_t m = 0; m < levels; ++m) {
        if (n == m) continue;
        const double gap = path.energy(m, k) - path.energy(n, k);
        if (std::abs(gap) < gap_floor) {
          throw Error(ErrorKind::kGapCollapse, "|E_" + std::to_string(m) + " - E_" + std::to_string(n) +
                                                   "| = " + std::to_string(std::abs(gap)) + " at s=" +
                                                   std::to_string(path.grid()[k]));
        }
        blocks[k][n * levels + m] = path.block(n, k).adjoint() * dh[k] * path.block(m, k) / gap;
      }
    }
  }
  return CouplingSet(path, std::move(blocks), {}, false);
}

CouplingSet coupling_diag(const SpectralPath& path, Stencil stencil) {
  const std::size_t levels = path.level_count();
  auto blocks = zero_blocks(path);
  for (std::size_t n = 0; n < levels; ++n) {
    const auto derivative = block_derivative(path, n, stencil);
    for (std::size_t k = 0; k < path.grid().size(); ++k) {
      blocks[k][n * levels + n] = path.block(n, k).adjoint() * derivative[k];
    }
  }
  return CouplingSet(path, std::move(blocks), midpoint_generators(path), false);
}

CouplingSet frame_couplings(const SpectralPath& path, Stencil stencil) {
  const std::size_t levels = path.level_count();
  auto blocks = zero_blocks(path);
  for (std::size_t m = 0; m < levels; ++m) {
    const auto derivative = block_derivative(path, m, stencil);
    for (std::size_t k = 0; k < path.grid().size(); ++k) {
      for (std::size_t n = 0; n < levels; ++n) {
        blocks[k][n * levels + m] = path.block(n, k).adjoint() * derivative[k];
      }
    }
  }
  return CouplingSet(path, std::move(blocks), midpoint_generators(path), false);
}

CouplingSet combine(const CouplingSet& offdiag, const CouplingSet& diag) {
  if (offdiag.grid().size() != diag.grid().size() || offdiag.dims() != diag.dims() ||
      offdiag.conjugated() != diag.conjugated()) {
    throw Error(ErrorKind::kDimensionMismatch, "cannot combine coupling sets from different paths");
  }
  CouplingSet out = offdiag;
  const std::size_t levels = out.level_count();
  for (std::size_t k = 0; k < out.grid().size(); ++k) {
    for (std::size_t n = 0; n < levels; ++n) out.blocks_[k][n * levels + n] = diag.plain(n, n, k);
  }
  out.midpoint_ = diag.midpoint_;
  return out;
}

CouplingSet compute_couplings(const Hamiltonian& h, const SpectralPath& path, const CouplingOptions& options) {
  const auto dh = hamiltonian_derivative(h, path.grid(), options.stencil);
  return combine(coupling_offdiag(path, dh, options.gap_floor), coupling_diag(path, options.stencil));
}

CouplingSet to_A(const CouplingSet& cs) {
  CouplingSet out = cs;
  for (auto& node : out.blocks_) {
    for (auto& block : node) block = block.conjugate().eval();
  }
  // Midpoint generators are already stored in the A convention.
  out.conjugated_ = !cs.conjugated_;
  return out;
}

double antisymmetry_error(const CouplingSet& cs) {
  double worst = 0.0;
  for (std::size_t k = 0; k < cs.grid().size(); ++k) {
    for (std::size_t n = 0; n < cs.level_count(); ++n) {
      for (std::size_t m = n; m < cs.level_count(); ++m) {
        worst = std::max(worst, (cs.plain(n, m, k) + cs.plain(m, n, k).adjoint()).norm());
      }
    }
  }
  return worst;
}

}  // namespace dapt
