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

#include "dapt/hamiltonian.hpp"
#include "dapt/numerics.hpp"
#include "dapt/spectral.hpp"

#include <span>
#include <vector>

namespace dapt {

/// Coupling matrices between snapshot levels on a grid.
///
/// Storage follows the ket-derivative definition: `plain(n, m, k)` is the
/// d_n x d_m matrix with entries <n^h(s_k)| d/ds m^g(s_k)>. The ansatz
/// recursion multiplies by the transposed layout, exposed through
/// `recursion(kl, n, k)`: a d_kl x d_n matrix with entry (h, g) equal to
/// <n^g| d/ds kl^h>. Use that accessor rather than transposing by hand.
///
/// After `to_A` the same slots hold the complex conjugates, so the
/// intra-level blocks become the generators of dU/ds = U A.
class CouplingSet {
 public:
  CouplingSet(const SpectralPath& path, std::vector<std::vector<CMatrix>> blocks,
              std::vector<std::vector<CMatrix>> midpoint, bool conjugated);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t level_count() const noexcept { return levels_; }
  const std::vector<Index>& dims() const noexcept { return dims_; }
  bool conjugated() const noexcept { return conjugated_; }

  const CMatrix& plain(std::size_t n, std::size_t m, std::size_t k) const { return blocks_[k][n * levels_ + m]; }
  CMatrix recursion(std::size_t kl, std::size_t n, std::size_t k) const { return plain(n, kl, k).transpose(); }

  /// Delta_mn(s_k) = E_m - E_n.
  double gap(std::size_t m, std::size_t n, std::size_t k) const { return energies_[k][m] - energies_[k][n]; }
  double energy(std::size_t n, std::size_t k) const { return energies_[k][n]; }

  /// Intra-level generator A^{nn}(s_k) = conj(M^{nn}(s_k)) on every node.
  std::vector<CMatrix> nodal_connection(std::size_t n) const;
  /// Intra-level generators at the N-1 interval midpoints, taken from the
  /// unitary part of the frame overlaps. Empty when built without frames.
  const std::vector<CMatrix>& midpoint_connection(std::size_t n) const { return midpoint_[n]; }

 private:
  friend CouplingSet combine(const CouplingSet& offdiag, const CouplingSet& diag);
  friend CouplingSet to_A(const CouplingSet& cs);

  Grid grid_;
  std::size_t levels_;
  std::vector<Index> dims_;
  std::vector<std::vector<double>> energies_;
  std::vector<std::vector<CMatrix>> blocks_;
  std::vector<std::vector<CMatrix>> midpoint_;
  bool conjugated_;
};

/// dH/ds on the grid: the Hamiltonian's analytic derivative when it has one,
/// finite differences of H(s_k) otherwise.
std::vector<CMatrix> hamiltonian_derivative(const Hamiltonian& h, const Grid& grid,
                                            Stencil stencil = Stencil::kSecondOrder);

/// Inter-level blocks from the gap formula <n|dH/ds|m> / (E_m - E_n); the
/// intra-level blocks are left zero. Throws GapCollapse when some |Delta| is
/// below `gap_floor` (a negative floor selects 1e-6 * max|E|).
CouplingSet coupling_offdiag(const SpectralPath& path, std::span<const CMatrix> dh, double gap_floor = -1.0);

/// Intra-level blocks <n^h| d/ds n^g> from differentiated frames, plus the
/// midpoint connection. Inter-level blocks are left zero.
CouplingSet coupling_diag(const SpectralPath& path, Stencil stencil = Stencil::kSecondOrder);

/// Every block from differentiated frames. Used to cross-check the gap formula.
CouplingSet frame_couplings(const SpectralPath& path, Stencil stencil = Stencil::kSecondOrder);

/// Inter-level blocks of `offdiag` with the intra-level blocks and midpoint
/// connection of `diag`.
CouplingSet combine(const CouplingSet& offdiag, const CouplingSet& diag);

struct CouplingOptions {
  Stencil stencil = Stencil::kSecondOrder;
  double gap_floor = -1.0;
};

/// Gap formula between levels, frame derivatives within levels.
CouplingSet compute_couplings(const Hamiltonian& h, const SpectralPath& path, const CouplingOptions& options = {});

/// Entrywise complex conjugate of every block (M -> A).
CouplingSet to_A(const CouplingSet& cs);

/// Largest Frobenius norm of M^{nm} + (M^{mn})^dagger over all pairs and nodes.
double antisymmetry_error(const CouplingSet& cs);

}  // namespace dapt
