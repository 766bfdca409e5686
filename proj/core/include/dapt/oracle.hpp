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

#include "dapt/grid.hpp"
#include "dapt/hamiltonian.hpp"
#include "dapt/spectral.hpp"
#include "dapt/types.hpp"

#include <span>
#include <vector>

namespace dapt {

struct PropagationOptions {
  /// Largest phase max|E| * dt / v accumulated in one RK4 substep, in radians.
  double max_phase_step = 5e-3;
  /// Upper bound on the total number of RK4 substeps.
  long long max_steps = 200'000'000;
};

/// Solution of i v dPsi/ds = H(s) Psi on the grid nodes, in the fixed
/// computational basis. Each node holds a dim x columns matrix, one column
/// per propagated initial state.
struct PropagationResult {
  std::vector<CMatrix> states;
  /// max over nodes and columns of | ||psi|| - 1 |.
  double max_norm_drift = 0.0;
  long long steps = 0;
  int substeps_per_interval = 0;

  /// Column `c` at node k.
  CVector state(std::size_t k, Index c = 0) const { return states[k].col(c); }
};

/// Classic RK4 with substepping; no renormalisation. Throws StepTooLarge when
/// the required substeps exceed `options.max_steps`.
PropagationResult propagate(const Hamiltonian& h, double v, const CMatrix& psi0, const Grid& grid,
                            const PropagationOptions& options = {});
PropagationResult propagate(const Hamiltonian& h, double v, const CVector& psi0, const Grid& grid,
                            const PropagationOptions& options = {});

/// Snapshot-basis coefficients of the propagated states: per node a
/// columns x dim matrix, row c holding <j(s)|psi_c(s)> for every eigenvector j.
std::vector<CMatrix> snapshot_amplitudes(const PropagationResult& result, const SpectralPath& path);

struct Residual {
  std::vector<double> per_node;
  double sup = 0.0;
};

/// ||a(s_k) - b(s_k)|| per node. No global phase is removed.
Residual residual(std::span<const CVector> a, std::span<const CVector> b);
/// Largest column 2-norm of a(s_k) - b(s_k) per node.
Residual residual(std::span<const CMatrix> a, std::span<const CMatrix> b);

}  // namespace dapt
