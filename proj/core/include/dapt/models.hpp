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
#include "dapt/hamiltonian.hpp"
#include "dapt/types.hpp"

#include <array>

namespace dapt {

/// Four-level system H(t) = (b/2) r(t).Gamma with Gamma_j = sigma_x (x) sigma_j,
/// r(t) = (sin(theta) cos(wt), sin(theta) sin(wt), cos(theta)). Basis order
/// (|uu>, |ud>, |du>, |dd>). Levels E_0 = -b/2 and E_1 = +b/2, each two-fold.
///
/// The rescaled time s in [0, 1] covers `cycles` full turns of the field, so
/// the sweep rate is v = w / (2 pi cycles) and t = s / v.
struct GammaModel {
  double b = 1.0;
  double theta = 1.0471975511965976;
  double w = 0.01;
  double cycles = 1.0;

  double v() const;
  double time(double s) const { return s / v(); }
  /// Throws ConfigError for b <= 0, w <= 0, cycles <= 0 or theta outside [0, pi].
  void validate() const;
};

struct DiracMatrices {
  std::array<CMatrix, 3> gamma;
  std::array<CMatrix, 3> pi;
};

/// Gamma_j = sigma_x (x) sigma_j and Pi_j = 1 (x) sigma_j.
DiracMatrices dirac_matrices();

CMatrix gamma_hamiltonian(const GammaModel& m, double t);
/// dH/dt.
CMatrix gamma_hamiltonian_rate(const GammaModel& m, double t);

/// Eigenvectors (|0^0>, |0^1>, |1^0>, |1^1>) in closed form.
SpectralFrame gamma_eigvectors(const GammaModel& m, double t);

/// Snapshot-basis coefficients of the exact state started in |0^0(0)>.
CVector gamma_exact_coefficients(const GammaModel& m, double t);
/// The same state in the computational basis.
CVector gamma_exact(const GammaModel& m, double t);

/// [[z1, -conj(z2)], [z2, conj(z1)]], shared by both levels.
CMatrix gamma_wz(const GammaModel& m, double t);

/// Zeroth and first order snapshot-basis coefficients for a |0^0(0)> start.
/// Terms w^(n+1) t count as order n; the first order carries the 1/v of the
/// model's own sweep rate.
CVector gamma_order0(const GammaModel& m, double t);
CVector gamma_order1(const GammaModel& m, double t);

/// (1 + i w^2 t sin^2(theta) / (4b)) U(t).
CMatrix gamma_corrected_wz(const GammaModel& m, double t);

/// The model as a function of s with analytic derivative and frames.
class GammaHamiltonian final : public Hamiltonian {
 public:
  explicit GammaHamiltonian(GammaModel model);
  const GammaModel& model() const noexcept { return model_; }
  Index dim() const override { return 4; }
  CMatrix at(double s) const override;
  std::optional<CMatrix> derivative(double s) const override;
  std::optional<SpectralFrame> analytic_frame(double s) const override;

 private:
  GammaModel model_;
};

/// Spin-1/2 in the same rotating field: H(t) = (b/2) r(t).sigma, levels
/// E = -b/2, +b/2 with no degeneracy.
struct SpinHalfModel {
  double b = 1.0;
  double theta = 1.0471975511965976;
  double w = 0.01;
  double cycles = 1.0;

  double v() const;
  double time(double s) const { return s / v(); }
  void validate() const;
};

CMatrix spin_half_hamiltonian(const SpinHalfModel& m, double t);
CMatrix spin_half_hamiltonian_rate(const SpinHalfModel& m, double t);
/// |0> = (sin(theta/2), -e^{i phi} cos(theta/2)), |1> = (cos(theta/2), e^{i phi} sin(theta/2)).
SpectralFrame spin_half_eigvectors(const SpinHalfModel& m, double t);
/// Rabi solution in the frame rotating with the field.
CVector spin_half_exact(const SpinHalfModel& m, double t, const CVector& psi0);
/// exp(-i (wt/2)(1 + cos(theta))): transport of the ground level in the
/// gauge above.
Complex spin_half_berry_holonomy(const SpinHalfModel& m, double t);

class SpinHalfHamiltonian final : public Hamiltonian {
 public:
  explicit SpinHalfHamiltonian(SpinHalfModel model);
  const SpinHalfModel& model() const noexcept { return model_; }
  Index dim() const override { return 2; }
  CMatrix at(double s) const override;
  std::optional<CMatrix> derivative(double s) const override;
  std::optional<SpectralFrame> analytic_frame(double s) const override;

 private:
  SpinHalfModel model_;
};

}  // namespace dapt
