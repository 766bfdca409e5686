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

#include "dapt/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dapt {

namespace {

void require_m_convention(const CouplingSet& cs) {
  if (cs.conjugated()) {
    throw Error(ErrorKind::kConfigError, "the order recursion needs M couplings, not their conjugates");
  }
}

void require_levels(std::span<const HolonomyPath> holonomies, std::size_t levels) {
  if (holonomies.size() != levels) {
    throw Error(ErrorKind::kDimensionMismatch, "one holonomy per level is required");
  }
}

/// Places a matrix with at most `rows` rows into the top of a zero block.
CMatrix pad_rows(const CMatrix& m, Index rows) {
  CMatrix out = CMatrix::Zero(rows, m.cols());
  out.topRows(m.rows()) = m;
  return out;
}

}  // namespace

DynamicalPhase dynamical_phase(const SpectralPath& path) {
  DynamicalPhase out;
  out.omega.resize(path.level_count());
  std::vector<double> energies(path.grid().size());
  for (std::size_t n = 0; n < path.level_count(); ++n) {
    for (std::size_t k = 0; k < energies.size(); ++k) energies[k] = path.energy(n, k);
    out.omega[n] = cumulative_quadrature(energies, path.grid().spacing());
  }
  return out;
}

InitialCondition InitialCondition::ground(const SpectralPath& path) {
  InitialCondition init;
  init.amplitudes.assign(path.level_count(), Complex{});
  init.amplitudes.front() = 1.0;
  for (std::size_t n = 0; n < path.level_count(); ++n) {
    init.unitaries.push_back(CMatrix::Identity(path.degeneracy(n), path.degeneracy(n)));
  }
  return init;
}

void InitialCondition::validate(const SpectralPath& path) const {
  if (amplitudes.size() != path.level_count() || unitaries.size() != path.level_count()) {
    throw Error(ErrorKind::kBadInitialCondition, "need one amplitude and one unitary per level");
  }
  for (std::size_t n = 0; n < unitaries.size(); ++n) {
    const auto& u = unitaries[n];
    if (u.rows() != path.degeneracy(n) || u.cols() != path.degeneracy(n) || unitarity_error(u) > 1e-10) {
      throw Error(ErrorKind::kBadInitialCondition, "U^" + std::to_string(n) + "(0) is not a unitary of the level size");
    }
  }
  bool any = false;
  for (Index h = 0; h < path.d_max(); ++h) {
    double weight = 0.0;
    for (std::size_t n = 0; n < amplitudes.size(); ++n) {
      if (path.degeneracy(n) > h) weight += std::norm(amplitudes[n]);
    }
    if (std::abs(weight - 1.0) <= 1e-10) {
      any = true;
    } else if (weight > 1e-10) {
      throw Error(ErrorKind::kBadInitialCondition,
                  "component " + std::to_string(h) + " starts with squared norm " + std::to_string(weight));
    }
  }
  if (!any) throw Error(ErrorKind::kBadInitialCondition, "no component carries a normalised initial state");
}

CorrectionBlocks::CorrectionBlocks(int order, const SpectralPath& path)
    : order_(order), rows_(path.d_max()), levels_(path.level_count()), dims_(path.dims()) {
  blocks_.resize(path.grid().size());
  for (auto& node : blocks_) {
    node.reserve(levels_ * levels_);
    for (std::size_t m = 0; m < levels_; ++m) {
      for (std::size_t n = 0; n < levels_; ++n) node.push_back(CMatrix::Zero(rows_, dims_[n]));
    }
  }
}

std::vector<CMatrix> CorrectionBlocks::series(std::size_t m, std::size_t n) const {
  std::vector<CMatrix> out;
  out.reserve(blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) out.push_back((*this)(m, n, k));
  return out;
}

CorrectionBlocks zeroth_order_blocks(const SpectralPath& path, std::span<const HolonomyPath> holonomies,
                                     const InitialCondition& init) {
  init.validate(path);
  require_levels(holonomies, path.level_count());
  CorrectionBlocks out(0, path);
  for (std::size_t n = 0; n < path.level_count(); ++n) {
    for (std::size_t k = 0; k < path.grid().size(); ++k) {
      out(n, n, k).topRows(path.degeneracy(n)) = init.amplitudes[n] * holonomies[n][k];
    }
  }
  return out;
}

StateFamily daa_state(const SpectralPath& path, std::span<const HolonomyPath> holonomies,
                      const DynamicalPhase& phases, const InitialCondition& init, double v) {
  return assemble_state(zeroth_order_blocks(path, holonomies, init), phases, v);
}

JIntegrals j_integral(const CouplingSet& cs, std::span<const HolonomyPath> holonomies) {
  require_m_convention(cs);
  const std::size_t levels = cs.level_count();
  require_levels(holonomies, levels);
  const std::size_t nodes = cs.grid().size();
  std::vector<std::vector<CMatrix>> samples(levels * levels);
  std::vector<CMatrix> integrand(nodes);
  for (std::size_t n = 0; n < levels; ++n) {
    for (std::size_t m = 0; m < levels; ++m) {
      if (n == m) continue;
      for (std::size_t k = 0; k < nodes; ++k) {
        const CMatrix& u = holonomies[n][k];
        integrand[k] = u * cs.recursion(n, m, k) * cs.recursion(m, n, k) * u.adjoint() / cs.gap(n, m, k);
      }
      samples[n * levels + m] = cumulative_quadrature(integrand, cs.grid().spacing());
    }
  }
  return JIntegrals(levels, std::move(samples));
}

StateFamily first_order_state(const CouplingSet& cs, std::span<const HolonomyPath> holonomies,
                              const DynamicalPhase& phases, const InitialCondition& init, double v,
                              const JIntegrals& j) {
  require_m_convention(cs);
  if (!(v > 0.0)) throw Error(ErrorKind::kConfigError, "v must be positive");
  const std::size_t levels = cs.level_count();
  require_levels(holonomies, levels);
  const auto& dims = cs.dims();
  const Index rows = *std::max_element(dims.begin(), dims.end());
  Index dim = 0;
  std::vector<Index> offset(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    offset[n] = dim;
    dim += dims[n];
  }

  // 1W^{mn}(0) / Delta_nm(0), fixed along the path.
  std::vector<CMatrix> w1_start(levels * levels);
  for (std::size_t m = 0; m < levels; ++m) {
    for (std::size_t n = 0; n < levels; ++n) {
      if (m == n) continue;
      w1_start[m * levels + n] =
          holonomies[m][0] * cs.recursion(m, n, 0) * holonomies[n][0].adjoint() / cs.gap(n, m, 0);
    }
  }

  StateFamily out;
  out.order = 1;
  out.coefficients.reserve(cs.grid().size());
  for (std::size_t k = 0; k < cs.grid().size(); ++k) {
    CMatrix c = CMatrix::Zero(rows, dim);
    for (std::size_t n = 0; n < levels; ++n) {
      const Complex phase_n = std::exp(-kI * phases(n, k) / v);
      for (std::size_t m = 0; m < levels; ++m) {
        if (m == n) continue;
        const Complex phase_m = std::exp(-kI * phases(m, k) / v);
        const CMatrix secular = kI * init.amplitudes[n] * j(n, m)[k] * holonomies[n][k];
        const CMatrix start = -kI * init.amplitudes[m] * w1_start[m * levels + n] * holonomies[n][k];
        const CMatrix local =
            kI * init.amplitudes[m] * holonomies[m][k] * cs.recursion(m, n, k) / cs.gap(n, m, k);
        c.middleCols(offset[n], dims[n]) +=
            phase_n * (pad_rows(secular, rows) + pad_rows(start, rows)) + phase_m * pad_rows(local, rows);
      }
    }
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

CorrectionBlocks advance_order(const CorrectionBlocks& blocks, const CouplingSet& cs,
                               std::span<const HolonomyPath> holonomies, Stencil stencil) {
  require_m_convention(cs);
  const std::size_t levels = blocks.level_count();
  require_levels(holonomies, levels);
  const std::size_t nodes = blocks.nodes();
  if (nodes != cs.grid().size() || blocks.dims() != cs.dims()) {
    throw Error(ErrorKind::kDimensionMismatch, "blocks and couplings live on different paths");
  }
  const double h = cs.grid().spacing();

  CorrectionBlocks next = blocks;  // same shapes; every entry is overwritten below
  // Inter-level blocks: algebraic solve.
  for (std::size_t m = 0; m < levels; ++m) {
    for (std::size_t n = 0; n < levels; ++n) {
      if (m == n) continue;
      const auto derivative = central_derivative(blocks.series(m, n), h, stencil);
      for (std::size_t k = 0; k < nodes; ++k) {
        CMatrix rhs = derivative[k];
        for (std::size_t kl = 0; kl < levels; ++kl) rhs += blocks(m, kl, k) * cs.recursion(kl, n, k);
        next(m, n, k) = (-kI / cs.gap(m, n, k)) * rhs;
      }
    }
  }
  // Diagonal blocks: B_nn = C U^n with dC/ds = F U^n^dagger.
  for (std::size_t n = 0; n < levels; ++n) {
    std::vector<CMatrix> integrand(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
      CMatrix source = CMatrix::Zero(blocks.rows(), blocks.dims()[n]);
      for (std::size_t kl = 0; kl < levels; ++kl) {
        if (kl != n) source -= next(n, kl, k) * cs.recursion(kl, n, k);
      }
      integrand[k] = source * holonomies[n][k].adjoint();
    }
    CMatrix c0 = CMatrix::Zero(blocks.rows(), blocks.dims()[n]);
    for (std::size_t m = 0; m < levels; ++m) {
      if (m != n) c0 -= next(m, n, 0);
    }
    c0 = c0 * holonomies[n][0].adjoint();
    const auto accumulated = cumulative_quadrature(integrand, h);
    for (std::size_t k = 0; k < nodes; ++k) next(n, n, k) = (c0 + accumulated[k]) * holonomies[n][k];
  }
  next.set_order(blocks.order() + 1);
  return next;
}

StateFamily assemble_state(const CorrectionBlocks& blocks, const DynamicalPhase& phases, double v) {
  if (!(v > 0.0)) throw Error(ErrorKind::kConfigError, "v must be positive");
  const std::size_t levels = blocks.level_count();
  const auto& dims = blocks.dims();
  Index dim = 0;
  std::vector<Index> offset(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    offset[n] = dim;
    dim += dims[n];
  }
  StateFamily out;
  out.order = blocks.order();
  out.coefficients.reserve(blocks.nodes());
  for (std::size_t k = 0; k < blocks.nodes(); ++k) {
    CMatrix c = CMatrix::Zero(blocks.rows(), dim);
    for (std::size_t m = 0; m < levels; ++m) {
      const Complex phase = std::exp(-kI * phases(m, k) / v);
      for (std::size_t n = 0; n < levels; ++n) c.middleCols(offset[n], dims[n]) += phase * blocks(m, n, k);
    }
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

StateFamily series_sum(std::span<const StateFamily> orders, double v, int max_order) {
  if (orders.empty()) throw Error(ErrorKind::kConfigError, "series_sum needs at least one order");
  StateFamily out;
  out.order = max_order;
  out.coefficients = orders.front().coefficients;
  double weight = 1.0;
  for (std::size_t p = 1; p < orders.size() && static_cast<int>(p) <= max_order; ++p) {
    weight *= v;
    if (orders[p].coefficients.size() != out.coefficients.size()) {
      throw Error(ErrorKind::kDimensionMismatch, "orders live on different grids");
    }
    for (std::size_t k = 0; k < out.coefficients.size(); ++k) out.coefficients[k] += weight * orders[p].coefficients[k];
  }
  return out;
}

std::vector<CMatrix> to_computational(const StateFamily& family, const SpectralPath& path) {
  if (family.coefficients.size() != path.grid().size()) {
    throw Error(ErrorKind::kDimensionMismatch, "state family and path have different grids");
  }
  std::vector<CMatrix> out;
  out.reserve(family.coefficients.size());
  for (std::size_t k = 0; k < family.coefficients.size(); ++k) {
    out.push_back(path[k].basis() * family.coefficients[k].transpose());
  }
  return out;
}

std::vector<double> diagonal_recursion_residual(const CorrectionBlocks& blocks, const CouplingSet& cs,
                                                Stencil stencil) {
  require_m_convention(cs);
  const std::size_t levels = blocks.level_count();
  std::vector<double> out(blocks.nodes(), 0.0);
  for (std::size_t n = 0; n < levels; ++n) {
    const auto derivative = central_derivative(blocks.series(n, n), cs.grid().spacing(), stencil);
    for (std::size_t k = 0; k < blocks.nodes(); ++k) {
      CMatrix r = derivative[k];
      for (std::size_t kl = 0; kl < levels; ++kl) r += blocks(n, kl, k) * cs.recursion(kl, n, k);
      out[k] = std::max(out[k], r.norm());
    }
  }
  return out;
}

double ValidityReport::max_sup() const {
  double worst = 0.0;
  for (double q : q1_sup) worst = std::max(worst, q);
  for (const auto& level : q2_sup) {
    for (double q : level) worst = std::max(worst, q);
  }
  return worst;
}

ValidityReport validity_margins(const CouplingSet& cs, std::span<const HolonomyPath> holonomies, const JIntegrals& j,
                                const DynamicalPhase& phases, double v, double threshold, Index label) {
  require_m_convention(cs);
  if (!(v > 0.0)) throw Error(ErrorKind::kConfigError, "v must be positive");
  if (!(threshold > 0.0)) throw Error(ErrorKind::kConfigError, "validity threshold must be positive");
  const std::size_t levels = cs.level_count();
  require_levels(holonomies, levels);
  const auto& dims = cs.dims();
  if (label < 0 || label >= dims[0]) throw Error(ErrorKind::kConfigError, "label outside the ground level");
  const std::size_t nodes = cs.grid().size();

  ValidityReport report;
  report.v = v;
  report.threshold = threshold;
  report.q1.assign(static_cast<std::size_t>(dims[0]), std::vector<double>(nodes, 0.0));
  report.q2.resize(levels > 0 ? levels - 1 : 0);
  for (std::size_t n = 1; n < levels; ++n) {
    report.q2[n - 1].assign(static_cast<std::size_t>(dims[n]), std::vector<double>(nodes, 0.0));
  }

  std::vector<CMatrix> w1_start(levels);
  for (std::size_t n = 1; n < levels; ++n) {
    w1_start[n] = holonomies[0][0] * cs.recursion(0, n, 0) * holonomies[n][0].adjoint() / cs.gap(n, 0, 0);
  }

  for (std::size_t k = 0; k < nodes; ++k) {
    const CMatrix& u0 = holonomies[0][k];
    CMatrix secular = CMatrix::Zero(dims[0], dims[0]);
    for (std::size_t n = 1; n < levels; ++n) secular += j(0, n)[k];
    const CMatrix row = secular * u0;
    for (Index g = 0; g < dims[0]; ++g) report.q1[static_cast<std::size_t>(g)][k] = v * std::abs(row(label, g));

    for (std::size_t n = 1; n < levels; ++n) {
      const CMatrix local = u0 * cs.recursion(0, n, k) / cs.gap(n, 0, k);
      const Complex phase = std::exp(-kI * (phases(n, k) - phases(0, k)) / v);
      const CMatrix start = w1_start[n] * holonomies[n][k];
      for (Index g = 0; g < dims[n]; ++g) {
        report.q2[n - 1][static_cast<std::size_t>(g)][k] = v * std::abs(local(label, g) - phase * start(label, g));
      }
    }
  }

  auto sup = [](const std::vector<double>& xs) { return *std::max_element(xs.begin(), xs.end()); };
  for (const auto& series : report.q1) {
    report.q1_sup.push_back(sup(series));
    report.q1_final.push_back(series.back());
  }
  report.q2_sup.resize(report.q2.size());
  report.q2_final.resize(report.q2.size());
  for (std::size_t i = 0; i < report.q2.size(); ++i) {
    for (const auto& series : report.q2[i]) {
      report.q2_sup[i].push_back(sup(series));
      report.q2_final[i].push_back(series.back());
    }
  }
  report.adiabatic_ok = report.max_sup() <= threshold;
  return report;
}

}  // namespace dapt
