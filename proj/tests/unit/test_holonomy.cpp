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

#include "dapt/couplings.hpp"
#include "dapt/grid.hpp"
#include "dapt/holonomy.hpp"
#include "dapt/models.hpp"
#include "dapt/pipeline.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace dapt;
using dapt::testing::max_abs;
using std::numbers::pi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kConfigError;
}

double wz_error(double theta, std::size_t nodes, TransportScheme scheme, Stencil stencil) {
  const GammaModel m{1.0, theta, 0.05, 1.0};
  const GammaHamiltonian h(m);
  const Grid grid(nodes);
  const SpectralPath path = analytic_path(h, grid);
  const CouplingSet cs = compute_couplings(h, path, CouplingOptions{stencil, -1.0});
  const HolonomyPath u = transport_level(cs, 0, CMatrix::Identity(2, 2), scheme);
  double worst = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) worst = std::max(worst, max_abs(u[k] - gamma_wz(m, m.time(grid[k]))));
  return worst;
}

}  // namespace

TEST_CASE("zero generator keeps the initial unitary") {
  std::mt19937 rng(1);
  const CMatrix u0 = dapt::testing::random_unitary(3, rng);
  const Grid grid(11);
  const std::vector<CMatrix> zero(10, CMatrix::Zero(3, 3));
  const HolonomyPath path = wz_transport(grid, zero, u0);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(max_abs(path[k] - u0) < 1e-15);
  CHECK(max_abs(path.initial() - u0) == 0.0);
}

TEST_CASE("constant generator gives the exponential, with U(0) on the left") {
  std::mt19937 rng(2);
  const CMatrix a = dapt::testing::random_anti_hermitian(2, rng);
  const CMatrix u0 = dapt::testing::random_unitary(2, rng);
  const Grid grid(21);
  const HolonomyPath mid = wz_transport(grid, std::vector<CMatrix>(20, a), u0);
  const HolonomyPath g4 = wz_transport_gauss4(grid, std::vector<CMatrix>(21, a), u0);
  CHECK(max_abs(mid[20] - u0 * unitary_expm(a, 1.0)) < 1e-12);
  CHECK(max_abs(g4[20] - u0 * unitary_expm(a, 1.0)) < 1e-12);
}

TEST_CASE("transport preconditions") {
  const Grid grid(5);
  CHECK(kind_of([&] { wz_transport(grid, std::vector<CMatrix>(4, CMatrix::Zero(2, 2)), 2.0 * CMatrix::Identity(2, 2)); }) ==
        ErrorKind::kNonUnitaryInitial);
  CHECK(kind_of([&] { wz_transport(grid, std::vector<CMatrix>(4, CMatrix::Identity(2, 2)), CMatrix::Identity(2, 2)); }) ==
        ErrorKind::kNotAntiHermitian);
  CHECK(kind_of([&] { wz_transport(grid, std::vector<CMatrix>(3, CMatrix::Zero(2, 2)), CMatrix::Identity(2, 2)); }) ==
        ErrorKind::kDimensionMismatch);
}

TEST_CASE("Gamma model holonomy against the closed form") {
  CHECK(wz_error(pi / 3, 4001, TransportScheme::kMidpoint, Stencil::kSecondOrder) <= 1e-6);
  CHECK(wz_error(pi / 6, 4001, TransportScheme::kMidpoint, Stencil::kSecondOrder) <= 1e-6);
  CHECK(wz_error(pi / 3, 4001, TransportScheme::kGauss4, Stencil::kFourthOrder) <= 1e-10);
}

TEST_CASE("theta = pi/2 gives a diagonal holonomy") {
  const GammaModel m{1.0, pi / 2, 0.05, 1.0};
  const GammaHamiltonian h(m);
  const Grid grid(401);
  const DaptSeries series = build_series(h, grid, [] {
    PipelineOptions o;
    o.order_cap = 0;
    return o;
  }());
  for (std::size_t k = 0; k < grid.size(); k += 50) {
    const CMatrix& u = series.holonomies[0][k];
    const double wt = m.w * m.time(grid[k]);
    CHECK(std::abs(u(0, 0) - std::exp(kI * wt / 2.0)) < 1e-10);
    CHECK(std::abs(u(1, 1) - std::exp(-kI * wt / 2.0)) < 1e-10);
    CHECK(std::abs(u(0, 1)) < 1e-10);
  }
}

TEST_CASE("midpoint transport converges at second order") {
  const double coarse = wz_error(pi / 3, 1001, TransportScheme::kMidpoint, Stencil::kSecondOrder);
  const double fine = wz_error(pi / 3, 2001, TransportScheme::kMidpoint, Stencil::kSecondOrder);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("Gauss transport converges at fourth order") {
  const double coarse = wz_error(pi / 3, 201, TransportScheme::kGauss4, Stencil::kFourthOrder);
  const double fine = wz_error(pi / 3, 401, TransportScheme::kGauss4, Stencil::kFourthOrder);
  CHECK(coarse / fine > 12.0);
}

TEST_CASE("gauge covariance of the loop holonomy") {
  // Rotating every frame by a fixed unitary G turns U into G^T U conj(G).
  std::mt19937 rng(9);
  const CMatrix g = dapt::testing::random_unitary(2, rng);
  const GammaHamiltonian h(GammaModel{1.0, pi / 3, 0.05, 1.0});
  const Grid grid(4001);
  const SpectralPath path = analytic_path(h, grid);
  std::vector<SpectralFrame> rotated = path.frames();
  for (auto& frame : rotated) {
    for (auto& level : frame.levels) level.block = level.block * g;
  }
  const SpectralPath other(grid, rotated, true);
  for (TransportScheme scheme : {TransportScheme::kMidpoint, TransportScheme::kGauss4}) {
    const HolonomyPath u = transport_level(compute_couplings(h, path), 0, CMatrix::Identity(2, 2), scheme);
    const HolonomyPath w = transport_level(compute_couplings(h, other), 0, CMatrix::Identity(2, 2), scheme);
    CHECK(max_abs(w.unitaries.back() - g.transpose() * u.unitaries.back() * g.conjugate()) <= 1e-6);
  }
}

TEST_CASE("transported unitaries stay unitary") {
  const GammaHamiltonian h(GammaModel{1.0, 1.2, 0.05, 2.0});
  const DaptSeries series = build_series(NumericalFramesView(h), Grid(2001));
  for (const auto& hol : series.holonomies) CHECK(hol.max_unitarity_error() <= 1e-8);
}

TEST_CASE("corrected holonomy") {
  auto corrected = [](double theta, double w) {
    const GammaModel m{1.0, theta, w, 1.0};
    PipelineOptions o;
    o.order_cap = 1;
    const DaptSeries series = build_series(GammaHamiltonian(m), Grid(2001), o);
    return std::make_pair(m, series.corrected(m.v()));
  };
  SUBCASE("static direction leaves the holonomy untouched") {
    const auto [m, c] = corrected(0.0, 0.05);
    for (std::size_t k = 0; k < c.v0.size(); k += 100) {
      CHECK(max_abs(c.v0[k] - gamma_wz(m, m.time(k / 2000.0))) < 1e-12);
      CHECK(max_abs(c.correction[k]) < 1e-12);
      CHECK(c.probability(0, static_cast<Index>(k)) == doctest::Approx(1.0));
    }
  }
  SUBCASE("continuous approach to the holonomy as v -> 0") {
    double previous = 1.0;
    for (double w : {0.04, 0.02, 0.01, 0.005}) {
      const auto [m, c] = corrected(pi / 3, w);
      const double gap = max_abs(c.v0.back() - gamma_wz(m, m.time(1.0)));
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 0.03);
  }
  SUBCASE("matches the closed form") {
    const auto [m, c] = corrected(pi / 3, 0.01);
    double worst = 0.0;
    for (std::size_t k = 0; k < c.v0.size(); ++k) {
      const CMatrix expected = gamma_corrected_wz(m, m.time(k / 2000.0));
      worst = std::max(worst, (c.v0[k] - expected).norm() / expected.norm());
    }
    CHECK(worst <= 1e-5);
  }
  SUBCASE("leakage and probability are consistent") {
    const auto [m, c] = corrected(pi / 3, 0.05);
    for (std::size_t k = 0; k < c.v0.size(); k += 250) {
      for (Index h = 0; h < 2; ++h) {
        const double p = c.probability(h, static_cast<Index>(k));
        CHECK(p <= 1.0 + 1e-12);
        CHECK(p + c.leakage[k].row(h).squaredNorm() >= 1.0 - 1e-12);
      }
    }
  }
}

TEST_CASE("corrected holonomy needs a ground start") {
  const GammaHamiltonian h(GammaModel{1.0, pi / 3, 0.05, 1.0});
  const Grid grid(101);
  const SpectralPath path = analytic_path(h, grid);
  InitialCondition init = InitialCondition::ground(path);
  init.amplitudes = {0.0, 1.0};
  const DaptSeries series = build_series(h, grid, {}, init);
  CHECK(kind_of([&] { series.corrected(0.01); }) == ErrorKind::kNotGroundStart);
}
