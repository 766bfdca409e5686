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
#include "dapt/holonomy.hpp"
#include "dapt/numerics.hpp"
#include "dapt/spectral.hpp"

#include <span>
#include <vector>

namespace dapt {

/// omega_n(s) = int_0^s E_n (hbar = 1) for every level.
struct DynamicalPhase {
  std::vector<std::vector<double>> omega;  // [level][node]

  double operator()(std::size_t n, std::size_t k) const { return omega[n][k]; }
};

DynamicalPhase dynamical_phase(const SpectralPath& path);

/// Initial amplitudes b_n(0) and unitaries U^n(0). Component h of the vector
/// ansatz starts in sum_n b_n(0) sum_g U^n(0)_{hg} |n^g(0)>.
struct InitialCondition {
  std::vector<Complex> amplitudes;
  std::vector<CMatrix> unitaries;

  /// b_n(0) = delta_{n0}, U^n(0) = 1: component h starts in |0^h(0)>.
  static InitialCondition ground(const SpectralPath& path);

  /// Throws BadInitialCondition unless every component is normalised (or
  /// empty) and the unitaries are unitary with the level sizes of `path`.
  void validate(const SpectralPath& path) const;
};

/// Blocks B^(p)_{mn}(s) of one perturbative order. Every block has d_max rows
/// (initial-condition labels, zero padded) and d_n columns. Blocks carry no
/// dependence on v.
class CorrectionBlocks {
 public:
  CorrectionBlocks(int order, const SpectralPath& path);

  int order() const noexcept { return order_; }
  void set_order(int order) noexcept { order_ = order; }
  Index rows() const noexcept { return rows_; }
  std::size_t level_count() const noexcept { return levels_; }
  std::size_t nodes() const noexcept { return blocks_.size(); }
  const std::vector<Index>& dims() const noexcept { return dims_; }

  const CMatrix& operator()(std::size_t m, std::size_t n, std::size_t k) const { return blocks_[k][m * levels_ + n]; }
  CMatrix& operator()(std::size_t m, std::size_t n, std::size_t k) { return blocks_[k][m * levels_ + n]; }

  /// B_{mn} on every node.
  std::vector<CMatrix> series(std::size_t m, std::size_t n) const;

 private:
  int order_;
  Index rows_;
  std::size_t levels_;
  std::vector<Index> dims_;
  std::vector<std::vector<CMatrix>> blocks_;
};

/// Vector-ansatz state of one order (or a partial sum): per node a
/// d_max x dim matrix whose row h holds the snapshot-basis coefficients of
/// component h, columns grouped level by level.
struct StateFamily {
  int order = 0;
  std::vector<CMatrix> coefficients;

  /// Row `label` at node k.
  CVector component(std::size_t k, Index label = 0) const { return coefficients[k].row(label).transpose(); }
};

/// J^{nmn}(s) = int_0^s U^n M^{nm} M^{mn} U^n^dagger / Delta_nm for n != m.
class JIntegrals {
 public:
  JIntegrals() = default;
  JIntegrals(std::size_t levels, std::vector<std::vector<CMatrix>> samples)
      : levels_(levels), samples_(std::move(samples)) {}

  /// Empty for n == m.
  const std::vector<CMatrix>& operator()(std::size_t n, std::size_t m) const { return samples_[n * levels_ + m]; }

 private:
  std::size_t levels_ = 0;
  std::vector<std::vector<CMatrix>> samples_;
};

/// B^(0)_{mn} = b_n(0) U^n(s) delta_mn.
CorrectionBlocks zeroth_order_blocks(const SpectralPath& path, std::span<const HolonomyPath> holonomies,
                                     const InitialCondition& init);

/// Degenerate adiabatic approximation.
StateFamily daa_state(const SpectralPath& path, std::span<const HolonomyPath> holonomies,
                      const DynamicalPhase& phases, const InitialCondition& init, double v);

JIntegrals j_integral(const CouplingSet& cs, std::span<const HolonomyPath> holonomies);

/// Closed first-order expression: the J term, the 1W(0)/Delta(0) term that
/// enforces |Psi1(0)> = 0, and the U^m M^{mn}/Delta(s) term.
StateFamily first_order_state(const CouplingSet& cs, std::span<const HolonomyPath> holonomies,
                              const DynamicalPhase& phases, const InitialCondition& init, double v,
                              const JIntegrals& j);

/// One step of the order recursion. Inter-level blocks are solved
/// algebraically from i Delta_mn B^(p+1)_mn = dB^(p)_mn/ds + sum_k B^(p)_mk M^kn;
/// the diagonal blocks follow dB_nn/ds = -sum_k B_nk M^kn, written as
/// B_nn = C U^n and integrated from C(0) = -sum_{m!=n} B_mn(0) U^n(0)^dagger.
CorrectionBlocks advance_order(const CorrectionBlocks& blocks, const CouplingSet& cs,
                               std::span<const HolonomyPath> holonomies, Stencil stencil = Stencil::kSecondOrder);

/// |Psi^(p)> = sum_{m,n} exp(-i omega_m / v) B_mn |n>.
StateFamily assemble_state(const CorrectionBlocks& blocks, const DynamicalPhase& phases, double v);

/// sum_{p <= max_order} v^p |Psi^(p)>.
StateFamily series_sum(std::span<const StateFamily> orders, double v, int max_order);

/// Columns are components, rows the computational basis.
std::vector<CMatrix> to_computational(const StateFamily& family, const SpectralPath& path);

/// max_n || dB_nn/ds + sum_k B_nk M^kn || per node: the m = n case of the
/// recursion, which every order must satisfy.
std::vector<double> diagonal_recursion_residual(const CorrectionBlocks& blocks, const CouplingSet& cs,
                                                Stencil stencil = Stencil::kFourthOrder);

/// Adiabaticity margins for a ground-level start in component `label`.
struct ValidityReport {
  double v = 0.0;
  double threshold = 0.1;
  /// q1[g](k) = v |sum_{n>=1} [J^{0n0} U^0]_{label,g}|.
  std::vector<std::vector<double>> q1;
  /// q2[n-1][g](k) = v |[U^0 M^{0n}]_{label,g} / Delta_n0(s)
  ///                   - exp(-i omega_n0 / v) [1W^{0n}(0) U^n]_{label,g} / Delta_n0(0)|.
  std::vector<std::vector<std::vector<double>>> q2;
  std::vector<double> q1_sup;
  std::vector<std::vector<double>> q2_sup;
  std::vector<double> q1_final;
  std::vector<std::vector<double>> q2_final;
  bool adiabatic_ok = false;

  double max_sup() const;
};

ValidityReport validity_margins(const CouplingSet& cs, std::span<const HolonomyPath> holonomies, const JIntegrals& j,
                                const DynamicalPhase& phases, double v, double threshold = 0.1, Index label = 0);

}  // namespace dapt
