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
#include "dapt/models.hpp"
#include "dapt/spectral.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <numbers>

using namespace dapt;
using dapt::testing::max_abs;
using std::numbers::pi;

namespace {

FunctionHamiltonian constant(const CMatrix& h) {
  return FunctionHamiltonian(h.rows(), [h](double) { return h; });
}

double max_block(const CouplingSet& cs) {
  double worst = 0.0;
  for (std::size_t k = 0; k < cs.grid().size(); ++k) {
    for (std::size_t n = 0; n < cs.level_count(); ++n) {
      for (std::size_t m = 0; m < cs.level_count(); ++m) worst = std::max(worst, max_abs(cs.plain(n, m, k)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("constant Hamiltonian has no couplings") {
  CMatrix h = CMatrix::Zero(3, 3);
  h.diagonal() << -1, 0.5, 2;
  const FunctionHamiltonian ham = constant(h);
  const SpectralPath path = build_spectral_path(ham, Grid(9));
  CHECK(max_block(compute_couplings(ham, path)) == 0.0);
}

TEST_CASE("gap formula agrees with differentiated analytic frames") {
  const GammaModel m{1.0, pi / 2, 0.1, 1.0};
  const GammaHamiltonian h(m);
  const Grid grid(4001);
  const SpectralPath path = analytic_path(h, grid);
  const CouplingSet gap = compute_couplings(h, path);
  const CouplingSet frames = frame_couplings(path, Stencil::kFourthOrder);
  for (std::size_t k : {std::size_t{0}, std::size_t{1000}, std::size_t{4000}}) {
    CHECK(max_abs(gap.plain(0, 1, k) - frames.plain(0, 1, k)) <= 1e-6);
    CHECK(max_abs(gap.plain(1, 0, k) - frames.plain(1, 0, k)) <= 1e-6);
  }
}

TEST_CASE("spin-1/2 inter-level coupling has constant modulus") {
  const SpinHalfModel m{1.0, 1.0, 0.1, 1.0};
  const SpinHalfHamiltonian h(m);
  const Grid grid(101);
  const SpectralPath path = analytic_path(h, grid);
  const CouplingSet cs = compute_couplings(h, path);
  const double expected = std::abs((path.block(0, 0).adjoint() * *h.derivative(0.0) * path.block(1, 0))(0, 0)) / m.b;
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::abs(cs.plain(0, 1, k)(0, 0)) == doctest::Approx(expected));
}

TEST_CASE("antisymmetry and anti-Hermitian intra-level blocks") {
  const GammaHamiltonian h(GammaModel{1.0, pi / 3, 0.1, 1.0});
  SUBCASE("analytic frames") {
    const SpectralPath path = analytic_path(h, Grid(4001));
    const CouplingSet cs = compute_couplings(h, path);
    CHECK(antisymmetry_error(cs) <= 1e-8);
  }
  SUBCASE("numerical frames") {
    const NumericalFramesView numeric(h);
    const SpectralPath path = build_spectral_path(numeric, Grid(4001));
    const CouplingSet cs = compute_couplings(numeric, path);
    CHECK(antisymmetry_error(cs) <= 1e-6);
    const CouplingSet all = frame_couplings(path);
    CHECK(antisymmetry_error(all) <= 1e-6);
  }
}

TEST_CASE("recursion accessor transposes the stored layout") {
  const GammaHamiltonian h(GammaModel{1.0, 0.9, 0.1, 1.0});
  const SpectralPath path = analytic_path(h, Grid(101));
  const CouplingSet cs = compute_couplings(h, path);
  const std::size_t k = 40;
  // [recursion(kl, n)]_{h g} = <n^g | d/ds kl^h>
  const CMatrix r = cs.recursion(1, 0, k);
  CHECK(r.rows() == 2);
  CHECK(r.cols() == 2);
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 2; ++b) CHECK(std::abs(r(a, b) - cs.plain(0, 1, k)(b, a)) == 0.0);
  }
  CHECK(cs.gap(1, 0, k) == doctest::Approx(1.0));
  CHECK(cs.gap(0, 1, k) == doctest::Approx(-1.0));
}

TEST_CASE("to_A conjugates entrywise") {
  const GammaHamiltonian h(GammaModel{1.0, pi / 3, 0.1, 1.0});
  const SpectralPath path = analytic_path(h, Grid(51));
  const CouplingSet m = compute_couplings(h, path);
  const CouplingSet a = to_A(m);
  CHECK(a.conjugated());
  for (std::size_t k = 0; k < 51; k += 5) {
    const CMatrix& mb = m.plain(0, 0, k);
    const CMatrix& ab = a.plain(0, 0, k);
    for (Index i = 0; i < 2; ++i) {
      for (Index j = 0; j < 2; ++j) CHECK(ab(i, j) == std::conj(mb(i, j)));
    }
  }
  CHECK(max_abs(a.nodal_connection(0)[10] - m.nodal_connection(0)[10]) == 0.0);
  CHECK_FALSE(to_A(a).conjugated());
}

TEST_CASE("to_A on special matrices") {
  // One level, one node pattern: a real coupling stays real, i*I flips sign.
  const Grid grid(3);
  const FunctionHamiltonian zero = constant(CMatrix::Zero(2, 2));
  const SpectralPath path = build_spectral_path(zero, grid);
  std::vector<std::vector<CMatrix>> real_blocks(3, {CMatrix::Ones(2, 2)});
  std::vector<std::vector<CMatrix>> imag_blocks(3, {kI * CMatrix::Identity(2, 2)});
  const CouplingSet real_set(path, real_blocks, {}, false);
  const CouplingSet imag_set(path, imag_blocks, {}, false);
  CHECK(max_abs(to_A(real_set).plain(0, 0, 1) - CMatrix::Ones(2, 2)) == 0.0);
  CHECK(max_abs(to_A(imag_set).plain(0, 0, 1) + kI * CMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("gap floor refuses near-degenerate levels") {
  CMatrix h = CMatrix::Zero(2, 2);
  h.diagonal() << 1.0, 1.0 + 1e-7;
  const FunctionHamiltonian ham = constant(h);
  const SpectralPath path = snapshot_eigensystem(ham, Grid(5), 1e-9);
  REQUIRE(path.level_count() == 2);
  try {
    compute_couplings(ham, path);
    FAIL("expected GapCollapse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kGapCollapse);
  }
  CHECK_NOTHROW(compute_couplings(ham, path, CouplingOptions{Stencil::kSecondOrder, 1e-8}));
}

TEST_CASE("Hamiltonian derivative falls back to finite differences") {
  const GammaHamiltonian h(GammaModel{1.0, 0.6, 0.1, 1.0});
  const Grid grid(2001);
  const SampledHamiltonian sampled(sample(h, grid));
  const auto fd = hamiltonian_derivative(sampled, grid, Stencil::kFourthOrder);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) worst = std::max(worst, max_abs(fd[k] - *h.derivative(grid[k])));
  CHECK(worst < 1e-9);
}
