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

#include "dapt/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace dapt {

namespace {

double spectral_radius(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

PropagationResult propagate(const Hamiltonian& h, double v, const CMatrix& psi0, const Grid& grid,
                            const PropagationOptions& options) {
  if (!(v > 0.0)) throw Error(ErrorKind::kConfigError, "v must be positive");
  if (!(options.max_phase_step > 0.0)) throw Error(ErrorKind::kConfigError, "max_phase_step must be positive");
  if (psi0.rows() != h.dim() || psi0.cols() == 0) {
    throw Error(ErrorKind::kDimensionMismatch, "initial state does not match the Hamiltonian dimension");
  }
  for (Index c = 0; c < psi0.cols(); ++c) {
    if (std::abs(psi0.col(c).norm() - 1.0) > 1e-10) {
      throw Error(ErrorKind::kBadInitialCondition, "initial state is not normalised");
    }
  }

  double hmax = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) hmax = std::max(hmax, spectral_radius(h.at(grid[k])));
  const double spacing = grid.spacing();
  const double per_interval = std::ceil(hmax * spacing / (v * options.max_phase_step));
  const double total = std::max(1.0, per_interval) * static_cast<double>(grid.size() - 1);
  if (total > static_cast<double>(options.max_steps)) {
    throw Error(ErrorKind::kStepTooLarge, "propagation needs " + std::to_string(total) + " RK4 steps");
  }

  PropagationResult out;
  out.substeps_per_interval = std::max(1, static_cast<int>(per_interval));
  const double dt = spacing / out.substeps_per_interval;
  const Complex factor = -kI / v;
  out.states.reserve(grid.size());
  out.states.push_back(psi0);

  CMatrix psi = psi0;
  auto rhs = [&](double s, const CMatrix& y) -> CMatrix { return factor * (h.at(s) * y); };
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double s0 = grid[k];
    for (int j = 0; j < out.substeps_per_interval; ++j) {
      const double s = s0 + j * dt;
      const CMatrix k1 = rhs(s, psi);
      const CMatrix k2 = rhs(s + 0.5 * dt, psi + (0.5 * dt) * k1);
      const CMatrix k3 = rhs(s + 0.5 * dt, psi + (0.5 * dt) * k2);
      const CMatrix k4 = rhs(s + dt, psi + dt * k3);
      psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++out.steps;
    }
    for (Index c = 0; c < psi.cols(); ++c) {
      out.max_norm_drift = std::max(out.max_norm_drift, std::abs(psi.col(c).norm() - 1.0));
    }
    out.states.push_back(psi);
  }
  return out;
}

PropagationResult propagate(const Hamiltonian& h, double v, const CVector& psi0, const Grid& grid,
                            const PropagationOptions& options) {
  return propagate(h, v, CMatrix(psi0), grid, options);
}

std::vector<CMatrix> snapshot_amplitudes(const PropagationResult& result, const SpectralPath& path) {
  if (result.states.size() != path.grid().size()) {
    throw Error(ErrorKind::kDimensionMismatch, "propagation and path have different grids");
  }
  std::vector<CMatrix> out;
  out.reserve(result.states.size());
  for (std::size_t k = 0; k < result.states.size(); ++k) {
    out.push_back((path[k].basis().adjoint() * result.states[k]).transpose());
  }
  return out;
}

Residual residual(std::span<const CVector> a, std::span<const CVector> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kDimensionMismatch, "residual of series with different lengths");
  Residual out;
  out.per_node.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != b[k].size()) throw Error(ErrorKind::kDimensionMismatch, "residual of states of different size");
    out.per_node.push_back((a[k] - b[k]).norm());
    out.sup = std::max(out.sup, out.per_node.back());
  }
  return out;
}

Residual residual(std::span<const CMatrix> a, std::span<const CMatrix> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kDimensionMismatch, "residual of series with different lengths");
  Residual out;
  out.per_node.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].rows() != b[k].rows() || a[k].cols() != b[k].cols()) {
      throw Error(ErrorKind::kDimensionMismatch, "residual of states of different shape");
    }
    out.per_node.push_back((a[k] - b[k]).colwise().norm().maxCoeff());
    out.sup = std::max(out.sup, out.per_node.back());
  }
  return out;
}

}  // namespace dapt
