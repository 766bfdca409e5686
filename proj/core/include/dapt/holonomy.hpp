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

#include "dapt/couplings.hpp"
#include "dapt/grid.hpp"
#include "dapt/spectral.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace dapt {

struct StateFamily;
struct DynamicalPhase;

/// Time-ordered stepping used for dU/ds = U A.
enum class TransportScheme {
  /// Second order: one exponential of the midpoint generator per interval.
  kMidpoint,
  /// Fourth order: two-point Gauss Magnus with cubic-interpolated generators.
  kGauss4,
};

/// Wilczek-Zee unitary U^n(s) of one level on every grid node.
struct HolonomyPath {
  std::size_t level = 0;
  std::vector<CMatrix> unitaries;

  const CMatrix& initial() const { return unitaries.front(); }
  const CMatrix& operator[](std::size_t k) const { return unitaries[k]; }
  std::size_t size() const noexcept { return unitaries.size(); }
  double max_unitarity_error() const;
};

/// U(s_{k+1}) = U(s_k) exp(h A_{k+1/2}) from the N-1 midpoint generators.
/// U(0) sits leftmost, so later times act from the right.
HolonomyPath wz_transport(const Grid& grid, std::span<const CMatrix> midpoint_generators, const CMatrix& u0,
                          std::size_t level = 0, double anti_hermitian_tol = 1e-6);

/// Fourth-order transport from nodal generators A(s_k).
HolonomyPath wz_transport_gauss4(const Grid& grid, std::span<const CMatrix> nodal_generators, const CMatrix& u0,
                                 std::size_t level = 0, double anti_hermitian_tol = 1e-6);

/// (A_k + A_{k+1}) / 2 on each interval.
std::vector<CMatrix> midpoint_average(std::span<const CMatrix> nodal);

/// Transports level n of a coupling set (either M or A convention). The
/// midpoint scheme prefers the frame-overlap connection when the set has one.
HolonomyPath transport_level(const CouplingSet& cs, std::size_t n, const CMatrix& u0,
                             TransportScheme scheme = TransportScheme::kMidpoint);

/// All levels, concurrently. `u0[n]` is U^n(0).
std::vector<HolonomyPath> transport_all(const CouplingSet& cs, const std::vector<CMatrix>& u0,
                                        TransportScheme scheme = TransportScheme::kMidpoint);

/// First-order corrected non-Abelian phase for a ground-level start.
///
/// Rows are initial labels h = 0..d_0-1. With |Psi> = |Psi0> + v|Psi1>
/// truncated at first order, V(s) holds the ground-level coefficients of
/// |Psi> with the dynamical phase of level 0 removed; `correction` is K with
/// V = (I + v K) U^0.
struct CorrectedHolonomy {
  double v = 0.0;
  std::vector<CMatrix> v0;
  std::vector<CMatrix> correction;
  /// P_h(s) = |<Psi0|Psi>_N|^2 per label (one column per node).
  Eigen::MatrixXd probability;
  /// N_h(s) = 1 / || |Psi0> + v|Psi1> || per label.
  Eigen::MatrixXd normalization;
  /// Excited-level amplitudes of the normalised first-order state, per label.
  std::vector<CMatrix> leakage;

  double max_unitarity_error() const;
};

/// Throws NotGroundStart when psi0 has weight outside level 0 at s = 0.
CorrectedHolonomy corrected_holonomy(const StateFamily& psi0, const StateFamily& psi1, const SpectralPath& path,
                                     const DynamicalPhase& phases, double v);

}  // namespace dapt
