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

#include "dapt/holonomy.hpp"

#include "dapt/engine.hpp"
#include "dapt/numerics.hpp"

#include <cmath>
#include <future>

namespace dapt {

namespace {

void check_initial(const CMatrix& u0) {
  if (u0.rows() != u0.cols() || unitarity_error(u0) > 1e-10) {
    throw Error(ErrorKind::kNonUnitaryInitial, "U(0) is not unitary");
  }
}

CMatrix anti_hermitian_part(const CMatrix& a, double tol) {
  const double err = anti_hermiticity_error(a);
  if (err > tol * std::max(1.0, a.norm())) {
    throw Error(ErrorKind::kNotAntiHermitian, "connection generator has ||A + A^dagger|| = " + std::to_string(err));
  }
  return (a - a.adjoint()) * 0.5;
}

}  // namespace

double HolonomyPath::max_unitarity_error() const {
  double worst = 0.0;
  for (const auto& u : unitaries) worst = std::max(worst, unitarity_error(u));
  return worst;
}

HolonomyPath wz_transport(const Grid& grid, std::span<const CMatrix> midpoint_generators, const CMatrix& u0,
                          std::size_t level, double anti_hermitian_tol) {
  check_initial(u0);
  if (midpoint_generators.size() + 1 != grid.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "need one midpoint generator per grid interval");
  }
  HolonomyPath out;
  out.level = level;
  out.unitaries.reserve(grid.size());
  out.unitaries.push_back(u0);
  for (const auto& a : midpoint_generators) {
    if (a.rows() != u0.cols()) throw Error(ErrorKind::kDimensionMismatch, "generator and U(0) differ in size");
    out.unitaries.push_back(out.unitaries.back() * unitary_expm(anti_hermitian_part(a, anti_hermitian_tol),
                                                                grid.spacing()));
  }
  return out;
}

HolonomyPath wz_transport_gauss4(const Grid& grid, std::span<const CMatrix> nodal_generators, const CMatrix& u0,
                                 std::size_t level, double anti_hermitian_tol) {
  check_initial(u0);
  if (nodal_generators.size() != grid.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "need one generator per grid node");
  }
  std::vector<CMatrix> generators;
  generators.reserve(grid.size());
  for (const auto& a : nodal_generators) generators.push_back(anti_hermitian_part(a, anti_hermitian_tol));

  const double h = grid.spacing();
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double commutator_weight = std::sqrt(3.0) * h * h / 12.0;
  const std::span<const CMatrix> samples(generators);

  HolonomyPath out;
  out.level = level;
  out.unitaries.reserve(grid.size());
  out.unitaries.push_back(u0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const auto x = static_cast<double>(k);
    const CMatrix a1 = cubic_interpolate(samples, x + c1);
    const CMatrix a2 = cubic_interpolate(samples, x + c2);
    // Right-acting form of the fourth-order Magnus step.
    const CMatrix omega = 0.5 * h * (a1 + a2) + commutator_weight * (a1 * a2 - a2 * a1);
    out.unitaries.push_back(out.unitaries.back() * unitary_expm(omega, 1.0));
  }
  return out;
}

std::vector<CMatrix> midpoint_average(std::span<const CMatrix> nodal) {
  std::vector<CMatrix> out;
  if (nodal.size() < 2) return out;
  out.reserve(nodal.size() - 1);
  for (std::size_t k = 0; k + 1 < nodal.size(); ++k) out.push_back((nodal[k] + nodal[k + 1]) * 0.5);
  return out;
}

HolonomyPath transport_level(const CouplingSet& cs, std::size_t n, const CMatrix& u0, TransportScheme scheme) {
  if (scheme == TransportScheme::kGauss4) {
    const auto nodal = cs.nodal_connection(n);
    return wz_transport_gauss4(cs.grid(), nodal, u0, n);
  }
  if (!cs.midpoint_connection(n).empty()) return wz_transport(cs.grid(), cs.midpoint_connection(n), u0, n);
  const auto nodal = cs.nodal_connection(n);
  const auto mid = midpoint_average(nodal);
  return wz_transport(cs.grid(), mid, u0, n);
}

std::vector<HolonomyPath> transport_all(const CouplingSet& cs, const std::vector<CMatrix>& u0,
                                        TransportScheme scheme) {
  if (u0.size() != cs.level_count()) {
    throw Error(ErrorKind::kDimensionMismatch, "one initial unitary per level is required");
  }
  std::vector<std::future<HolonomyPath>> jobs;
  jobs.reserve(u0.size());
  for (std::size_t n = 0; n < u0.size(); ++n) {
    jobs.push_back(std::async(std::launch::async, [&cs, &u0, n, scheme] {
      return transport_level(cs, n, u0[n], scheme);
    }));
  }
  std::vector<HolonomyPath> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

double CorrectedHolonomy::max_unitarity_error() const {
  double worst = 0.0;
  for (const auto& m : v0) worst = std::max(worst, unitarity_error(m));
  return worst;
}

CorrectedHolonomy corrected_holonomy(const StateFamily& psi0, const StateFamily& psi1, const SpectralPath& path,
                                     const DynamicalPhase& phases, double v) {
  if (!(v > 0.0)) throw Error(ErrorKind::kConfigError, "v must be positive");
  const std::size_t nodes = path.grid().size();
  if (psi0.coefficients.size() != nodes || psi1.coefficients.size() != nodes) {
    throw Error(ErrorKind::kDimensionMismatch, "state families must live on the path grid");
  }
  const Index d0 = path.degeneracy(0);
  const Index dim = path.dim();
  if (psi0.coefficients.front().rows() < d0) {
    throw Error(ErrorKind::kDimensionMismatch, "state family has fewer labels than the ground degeneracy");
  }
  const CMatrix& start = psi0.coefficients.front();
  if (start.topRows(d0).rightCols(dim - d0).norm() > 1e-10) {
    throw Error(ErrorKind::kNotGroundStart, "zeroth-order state has weight outside the ground level at s=0");
  }

  CorrectedHolonomy out;
  out.v = v;
  out.v0.reserve(nodes);
  out.correction.reserve(nodes);
  out.leakage.reserve(nodes);
  out.probability.resize(d0, static_cast<Index>(nodes));
  out.normalization.resize(d0, static_cast<Index>(nodes));
  for (std::size_t k = 0; k < nodes; ++k) {
    const CMatrix a0 = psi0.coefficients[k].topRows(d0);
    const CMatrix a1 = psi1.coefficients[k].topRows(d0);
    const CMatrix first = a0 + v * a1;
    const Complex unphase = std::exp(kI * phases(0, k) / v);
    const CMatrix ground0 = a0.leftCols(d0);
    out.v0.push_back(unphase * first.leftCols(d0));
    out.correction.push_back(a1.leftCols(d0) * ground0.inverse());
    CMatrix leak(d0, dim - d0);
    for (Index h = 0; h < d0; ++h) {
      const double norm = first.row(h).norm();
      const double n_h = norm > 0.0 ? 1.0 / norm : 0.0;
      out.normalization(h, static_cast<Index>(k)) = n_h;
      const Complex overlap = a0.row(h).dot(first.row(h)) * n_h;
      out.probability(h, static_cast<Index>(k)) = std::norm(overlap);
      leak.row(h) = n_h * first.row(h).rightCols(dim - d0);
    }
    out.leakage.push_back(std::move(leak));
  }
  return out;
}

}  // namespace dapt
