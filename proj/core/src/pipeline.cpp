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

#include "dapt/pipeline.hpp"

#include <string>

namespace dapt {

PipelineOptions PipelineOptions::high_order() {
  PipelineOptions options;
  options.transport = TransportScheme::kGauss4;
  options.stencil = Stencil::kFourthOrder;
  return options;
}

void PipelineOptions::validate() const {
  if (!(degeneracy_tol > 0.0)) throw Error(ErrorKind::kConfigError, "degeneracy tolerance must be positive");
  if (!(rank_tol > 0.0)) throw Error(ErrorKind::kConfigError, "rank tolerance must be positive");
  if (order_cap < 0 || order_cap > 2) throw Error(ErrorKind::kConfigError, "order cap must be 0, 1 or 2");
}

StateFamily DaptSeries::state(int p, double v) const {
  if (p < 0 || p > order_cap()) throw Error(ErrorKind::kConfigError, "order " + std::to_string(p) + " not built");
  return assemble_state(blocks[static_cast<std::size_t>(p)], phases, v);
}

StateFamily DaptSeries::first_order(double v) const {
  return first_order_state(couplings, holonomies, phases, init, v, j);
}

StateFamily DaptSeries::sum(int max_order, double v) const {
  if (max_order < 0 || max_order > order_cap()) {
    throw Error(ErrorKind::kConfigError, "order " + std::to_string(max_order) + " not built");
  }
  std::vector<StateFamily> orders;
  for (int p = 0; p <= max_order; ++p) orders.push_back(state(p, v));
  return series_sum(orders, v, max_order);
}

ValidityReport DaptSeries::validity(double v, double threshold) const {
  return validity_margins(couplings, holonomies, j, phases, v, threshold);
}

CorrectedHolonomy DaptSeries::corrected(double v) const {
  return corrected_holonomy(state(0, v), first_order(v), path, phases, v);
}

DaptSeries build_series(const Hamiltonian& h, const Grid& grid, const PipelineOptions& options,
                        std::optional<InitialCondition> init) {
  options.validate();
  SpectralPath path = build_spectral_path(h, grid, options.degeneracy_tol, options.rank_tol);
  CouplingSet couplings = compute_couplings(h, path, CouplingOptions{options.stencil, options.gap_floor});
  InitialCondition start = init ? *std::move(init) : InitialCondition::ground(path);
  start.validate(path);
  std::vector<HolonomyPath> holonomies = transport_all(couplings, start.unitaries, options.transport);
  DynamicalPhase phases = dynamical_phase(path);
  JIntegrals j = j_integral(couplings, holonomies);

  std::vector<CorrectionBlocks> blocks;
  blocks.push_back(zeroth_order_blocks(path, holonomies, start));
  for (int p = 1; p <= options.order_cap; ++p) {
    blocks.push_back(advance_order(blocks.back(), couplings, holonomies, options.stencil));
  }
  return DaptSeries{std::move(path),    std::move(couplings), std::move(holonomies), std::move(phases),
                    std::move(start),   std::move(j),         std::move(blocks)};
}

}  // namespace dapt
