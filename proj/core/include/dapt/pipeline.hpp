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
#include "dapt/engine.hpp"
#include "dapt/hamiltonian.hpp"
#include "dapt/holonomy.hpp"
#include "dapt/spectral.hpp"

#include <optional>
#include <vector>

namespace dapt {

struct PipelineOptions {
  double degeneracy_tol = 1e-8;
  double rank_tol = 1e-3;
  /// Negative selects 1e-6 * max|E|.
  double gap_floor = -1.0;
  TransportScheme transport = TransportScheme::kMidpoint;
  Stencil stencil = Stencil::kSecondOrder;
  /// Highest order of the recursion, 0..2.
  int order_cap = 2;

  /// Fourth-order transport and stencils, for order-scaling studies.
  static PipelineOptions high_order();
  void validate() const;
};

/// Everything the series needs on one grid. The blocks do not depend on v,
/// so one build serves a whole v-sweep.
struct DaptSeries {
  SpectralPath path;
  CouplingSet couplings;
  std::vector<HolonomyPath> holonomies;
  DynamicalPhase phases;
  InitialCondition init;
  JIntegrals j;
  /// blocks[p] for p = 0..order_cap, from the recursion.
  std::vector<CorrectionBlocks> blocks;

  int order_cap() const noexcept { return static_cast<int>(blocks.size()) - 1; }
  /// |Psi^(p)> assembled from the recursion blocks.
  StateFamily state(int p, double v) const;
  /// The closed first-order expression.
  StateFamily first_order(double v) const;
  /// sum_{p <= max_order} v^p |Psi^(p)>.
  StateFamily sum(int max_order, double v) const;
  ValidityReport validity(double v, double threshold = 0.1) const;
  CorrectedHolonomy corrected(double v) const;
};

/// Spectral path, couplings, holonomies, phases and the recursion up to
/// `options.order_cap`. The default initial condition is the ground start.
DaptSeries build_series(const Hamiltonian& h, const Grid& grid, const PipelineOptions& options = {},
                        std::optional<InitialCondition> init = std::nullopt);

}  // namespace dapt
