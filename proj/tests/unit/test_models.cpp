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

#include "dapt/grid.hpp"
#include "dapt/models.hpp"
#include "dapt/numerics.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace dapt;
using dapt::testing::max_abs;
using std::numbers::pi;

namespace {

GammaModel model(double theta, double w) { return GammaModel{1.0, theta, w, 1.0}; }

}  // namespace

TEST_CASE("Dirac matrices obey the Clifford algebra exactly") {
  const DiracMatrices d = dirac_matrices();
  const CMatrix one = CMatrix::Identity(4, 4);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(max_abs(d.gamma[i] * d.gamma[j] + d.gamma[j] * d.gamma[i] - (i == j ? 2.0 : 0.0) * one) == 0.0);
    }
  }
  CHECK(max_abs(d.gamma[0] * d.gamma[1] - d.gamma[1] * d.gamma[0] - 2.0 * kI * d.pi[2]) == 0.0);
  CHECK(max_abs(d.gamma[1] * d.gamma[2] - d.gamma[2] * d.gamma[1] - 2.0 * kI * d.pi[0]) == 0.0);
  CHECK(max_abs(d.gamma[2] * d.gamma[0] - d.gamma[0] * d.gamma[2] - 2.0 * kI * d.pi[1]) == 0.0);
}

TEST_CASE("Gamma Hamiltonian at theta = 0 is constant") {
  const GammaModel m = model(0.0, 0.3);
  const CMatrix expected = 0.5 * dirac_matrices().gamma[2];
  CHECK(max_abs(gamma_hamiltonian(m, 0.0) - expected) == 0.0);
  CHECK(max_abs(gamma_hamiltonian(m, 7.3) - expected) == 0.0);
}

TEST_CASE("Gamma Hamiltonian squares to (b/2)^2 and has a doubly degenerate spectrum") {
  const GammaModel m{1.7, 0.9, 0.2, 1.0};
  for (double t : {0.0, 1.1, 5.0}) {
    const CMatrix h = gamma_hamiltonian(m, t);
    CHECK(hermiticity_error(h) == 0.0);
    CHECK(max_abs(h * h - 0.25 * m.b * m.b * CMatrix::Identity(4, 4)) < 1e-14);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    CHECK(eig.eigenvalues()(0) == doctest::Approx(-0.85));
    CHECK(eig.eigenvalues()(1) == doctest::Approx(-0.85));
    CHECK(eig.eigenvalues()(2) == doctest::Approx(0.85));
    CHECK(eig.eigenvalues()(3) == doctest::Approx(0.85));
  }
}

TEST_CASE("Gamma Hamiltonian rate matches finite differences") {
  const GammaModel m = model(1.2, 0.4);
  const double t = 2.0, dt = 1e-5;
  const CMatrix fd = (gamma_hamiltonian(m, t + dt) - gamma_hamiltonian(m, t - dt)) / (2 * dt);
  CHECK(max_abs(fd - gamma_hamiltonian_rate(m, t)) < 1e-9);
}

TEST_CASE("Gamma eigenvectors") {
  SUBCASE("theta = 0, t = 0 ground vector") {
    const SpectralFrame f = gamma_eigvectors(model(0.0, 1.0), 0.0);
    CVector expected(4);
    expected << 0, -1, 0, -1;
    expected /= std::sqrt(2.0);
    CHECK(max_abs(f.levels[0].block.col(0) - expected) < 1e-15);
  }
  SUBCASE("orthonormal and eigen at a generic point") {
    const GammaModel m = model(pi / 5, 1.0);
    const SpectralFrame f = gamma_eigvectors(m, 1.3);
    const CMatrix basis = f.basis();
    CHECK(unitarity_error(basis) < 1e-12);
    const CMatrix h = gamma_hamiltonian(m, 1.3);
    for (const auto& level : f.levels) CHECK(max_abs(h * level.block - level.energy * level.block) < 1e-12);
  }
  SUBCASE("random parameters") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> angle(0.0, pi), time(0.0, 50.0);
    for (int trial = 0; trial < 25; ++trial) {
      const GammaModel m = model(angle(rng), 0.37);
      const double t = time(rng);
      const CMatrix h = gamma_hamiltonian(m, t);
      for (const auto& level : gamma_eigvectors(m, t).levels) {
        CHECK(max_abs(h * level.block - level.energy * level.block) < 1e-12);
      }
    }
  }
}

TEST_CASE("closed-form exact state") {
  const GammaModel m = model(pi / 3, 0.2);
  CHECK(max_abs(gamma_exact(m, 0.0) - gamma_eigvectors(m, 0.0).levels[0].block.col(0)) < 1e-15);
  for (double t : {0.5, 3.0, 17.0, 31.4}) CHECK(std::abs(gamma_exact(m, t).norm() - 1.0) < 1e-12);
}

TEST_CASE("closed-form state solves the Schrodinger equation") {
  const GammaModel m = model(1.1, 0.3);
  const double t = 4.2, dt = 1e-5;
  const CVector dpsi = (gamma_exact(m, t + dt) - gamma_exact(m, t - dt)) / (2 * dt);
  CHECK(max_abs(kI * dpsi - gamma_hamiltonian(m, t) * gamma_exact(m, t)) < 1e-8);
}

TEST_CASE("closed-form holonomy") {
  CHECK(max_abs(gamma_wz(model(1.0, 0.5), 0.0) - CMatrix::Identity(2, 2)) == 0.0);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> angle(0.0, pi), time(0.0, 100.0);
  for (int trial = 0; trial < 25; ++trial) CHECK(unitarity_error(gamma_wz(model(angle(rng), 0.1), time(rng))) < 1e-14);
  const GammaModel half = model(pi / 2, 0.1);
  const CMatrix u = gamma_wz(half, 12.0);
  CHECK(std::abs(u(0, 0) - std::exp(kI * 0.6)) < 1e-15);
  CHECK(std::abs(u(1, 0)) < 1e-15);
}

TEST_CASE("closed-form orders at t = 0") {
  const GammaModel m = model(pi / 3, 0.05);
  CVector start = CVector::Zero(4);
  start(0) = 1.0;
  CHECK(max_abs(gamma_order0(m, 0.0) - start) == 0.0);
  CHECK(max_abs(gamma_order1(m, 0.0)) < 1e-15);
}

TEST_CASE("closed-form first order vanishes for a static field direction") {
  const GammaModel m = model(0.0, 0.05);
  for (double t : {1.0, 50.0, 125.0}) CHECK(max_abs(gamma_order1(m, t)) < 1e-15);
}

TEST_CASE("closed-form truncation error scales as v^2") {
  std::vector<double> vs, errors;
  for (double w : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
    const GammaModel m = model(pi / 3, w);
    double worst = 0.0;
    const Grid g(2001);
    for (double s : g.points()) {
      const double t = m.time(s);
      worst = std::max(worst, (gamma_exact_coefficients(m, t) - gamma_order0(m, t) - m.v() * gamma_order1(m, t)).norm());
    }
    vs.push_back(m.v());
    errors.push_back(worst);
  }
  CHECK(std::abs(fit_loglog(vs, errors).slope - 2.0) <= 0.2);
}

TEST_CASE("corrected holonomy closed form") {
  CHECK(max_abs(gamma_corrected_wz(model(0.0, 0.3), 9.0) - gamma_wz(model(0.0, 0.3), 9.0)) == 0.0);
  const GammaModel m = model(pi / 3, 0.01);
  const double t = 2 * pi / m.w;
  const CMatrix v0 = gamma_corrected_wz(m, t);
  const double x = m.w * m.w * t * 0.75 / 4.0;
  CHECK(max_abs(v0.adjoint() * v0 - CMatrix::Identity(2, 2)) == doctest::Approx(x * x).epsilon(1e-9));
}

TEST_CASE("Gamma Hamiltonian in rescaled time") {
  const GammaModel m = model(0.8, 0.02);
  const GammaHamiltonian h(m);
  CHECK(m.v() == doctest::Approx(0.02 / (2 * pi)));
  CHECK(max_abs(h.at(1.0) - h.at(0.0)) < 1e-14);
  const double s = 0.37, ds = 1e-6;
  CHECK(max_abs((h.at(s + ds) - h.at(s - ds)) / (2 * ds) - *h.derivative(s)) < 1e-7);
  const auto frame = h.analytic_frame(s);
  REQUIRE(frame);
  CHECK(frame->s == s);
  CHECK_THROWS_AS(GammaHamiltonian(GammaModel{-1.0, 0.5, 0.1, 1.0}), Error);
  CHECK_THROWS_AS(GammaHamiltonian(GammaModel{1.0, 4.0, 0.1, 1.0}), Error);
}

TEST_CASE("spin-1/2 model") {
  SpinHalfModel m{1.0, pi / 3, 0.05, 1.0};
  SUBCASE("eigenvectors") {
    for (double t : {0.0, 3.0, 40.0}) {
      const SpectralFrame f = spin_half_eigvectors(m, t);
      const CMatrix h = spin_half_hamiltonian(m, t);
      CHECK(unitarity_error(f.basis()) < 1e-14);
      for (const auto& level : f.levels) {
        CHECK(level.degeneracy() == 1);
        CHECK(max_abs(h * level.block - level.energy * level.block) < 1e-14);
      }
    }
  }
  SUBCASE("exact solution solves the Schrodinger equation") {
    CVector psi0(2);
    psi0 << 0.6, Complex(0, 0.8);
    CHECK(max_abs(spin_half_exact(m, 0.0, psi0) - psi0) < 1e-15);
    const double t = 7.0, dt = 1e-5;
    const CVector dpsi = (spin_half_exact(m, t + dt, psi0) - spin_half_exact(m, t - dt, psi0)) / (2 * dt);
    CHECK(max_abs(kI * dpsi - spin_half_hamiltonian(m, t) * spin_half_exact(m, t, psi0)) < 1e-8);
  }
  SUBCASE("theta = 0 is pure phase evolution") {
    m.theta = 0.0;
    CVector up(2);
    up << 1, 0;
    const double t = 13.0;
    CHECK(std::abs(spin_half_exact(m, t, up)(0) - std::exp(-kI * 0.5 * t)) < 1e-13);
  }
  SUBCASE("Berry factor") {
    CHECK(std::abs(spin_half_berry_holonomy(m, 2 * pi / m.w) - std::exp(-kI * pi * 1.5)) < 1e-13);
  }
}
