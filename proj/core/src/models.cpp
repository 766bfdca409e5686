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

#include "dapt/models.hpp"

#include <cmath>
#include <numbers>

namespace dapt {

namespace {

using std::numbers::pi;

void check_field(double b, double theta, double w, double cycles) {
  if (!(b > 0.0)) throw Error(ErrorKind::kConfigError, "b must be positive");
  if (!(w > 0.0)) throw Error(ErrorKind::kConfigError, "w must be positive");
  if (!(cycles > 0.0)) throw Error(ErrorKind::kConfigError, "cycles must be positive");
  if (!(theta >= 0.0 && theta <= pi)) throw Error(ErrorKind::kConfigError, "theta must lie in [0, pi]");
}

struct Pauli {
  CMatrix x{2, 2}, y{2, 2}, z{2, 2};
  Pauli() {
    x << 0, 1, 1, 0;
    y << 0, -kI, kI, 0;
    z << 1, 0, 0, -1;
  }
};

const Pauli& pauli() {
  static const Pauli p;
  return p;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

const DiracMatrices& dirac() {
  static const DiracMatrices d = dirac_matrices();
  return d;
}

/// z1, z2 of the closed-form holonomy.
std::pair<Complex, Complex> wz_entries(const GammaModel& m, double t) {
  const double c = std::cos(m.theta);
  const double half = m.w * t / 2.0;
  const Complex front = std::exp(kI * half);
  const Complex z1 = front * (std::cos(half * c) - kI * c * std::sin(half * c));
  const Complex z2 = kI * front * std::sin(m.theta) * std::sin(half * c);
  return {z1, z2};
}

}  // namespace

double GammaModel::v() const { return w / (2.0 * pi * cycles); }

void GammaModel::validate() const { check_field(b, theta, w, cycles); }

DiracMatrices dirac_matrices() {
  const Pauli& p = pauli();
  const CMatrix one = CMatrix::Identity(2, 2);
  DiracMatrices d;
  d.gamma = {kron(p.x, p.x), kron(p.x, p.y), kron(p.x, p.z)};
  d.pi = {kron(one, p.x), kron(one, p.y), kron(one, p.z)};
  return d;
}

CMatrix gamma_hamiltonian(const GammaModel& m, double t) {
  const auto& g = dirac().gamma;
  const double phi = m.w * t;
  const double st = std::sin(m.theta);
  return 0.5 * m.b * (st * std::cos(phi) * g[0] + st * std::sin(phi) * g[1] + std::cos(m.theta) * g[2]);
}

CMatrix gamma_hamiltonian_rate(const GammaModel& m, double t) {
  const auto& g = dirac().gamma;
  const double phi = m.w * t;
  const double st = std::sin(m.theta);
  return 0.5 * m.b * m.w * st * (-std::sin(phi) * g[0] + std::cos(phi) * g[1]);
}

SpectralFrame gamma_eigvectors(const GammaModel& m, double t) {
  const Complex alpha = std::exp(kI * (m.w * t)) * std::sin(m.theta);
  const double beta = std::cos(m.theta);
  const double r = 1.0 / std::sqrt(2.0);
  SpectralFrame frame;
  frame.s = t * m.v();
  for (int n = 0; n < 2; ++n) {
    const double sign = n == 0 ? 1.0 : -1.0;
    CMatrix block(4, 2);
    block.col(0) << std::conj(alpha), -beta, 0.0, -sign;
    block.col(1) << beta, alpha, -sign, 0.0;
    frame.levels.push_back(Level{(n == 0 ? -0.5 : 0.5) * m.b, r * block});
  }
  return frame;
}

CVector gamma_exact_coefficients(const GammaModel& m, double t) {
  const double c = std::cos(m.theta);
  const double st = std::sin(m.theta);
  auto omega = [&](double sign) { return std::sqrt(m.w * m.w + m.b * m.b + sign * 2.0 * m.w * m.b * c); };
  auto a_coef = [&](double sign) {
    const double o = omega(sign);
    return Complex(std::cos(o * t / 2.0), 0.0) + kI * ((m.b + sign * m.w * c) / o) * std::sin(o * t / 2.0);
  };
  auto b_coef = [&](double sign) { return kI * (m.w / omega(sign)) * std::sin(omega(sign) * t / 2.0); };
  const Complex ap = a_coef(1.0), am = a_coef(-1.0), bp = b_coef(1.0), bm = b_coef(-1.0);
  const Complex up = std::exp(kI * (m.w * t / 2.0));
  const Complex down = std::conj(up);
  CVector out(4);
  out << up * ((1.0 + c) / 2.0 * am + (1.0 - c) / 2.0 * ap), down * st * (ap - am) / 2.0,
      up * st * st * (bp + bm) / 2.0, down * st * ((1.0 + c) / 2.0 * bm - (1.0 - c) / 2.0 * bp);
  return out;
}

CVector gamma_exact(const GammaModel& m, double t) {
  return gamma_eigvectors(m, t).basis() * gamma_exact_coefficients(m, t);
}

CMatrix gamma_wz(const GammaModel& m, double t) {
  const auto [z1, z2] = wz_entries(m, t);
  CMatrix u(2, 2);
  u << z1, -std::conj(z2), z2, std::conj(z1);
  return u;
}

CVector gamma_order0(const GammaModel& m, double t) {
  const auto [z1, z2] = wz_entries(m, t);
  CVector out = CVector::Zero(4);
  const Complex phase = std::exp(kI * (m.b * t / 2.0));
  out(0) = phase * z1;
  out(1) = -phase * std::conj(z2);
  return out;
}

CVector gamma_order1(const GammaModel& m, double t) {
  const auto [z1, z2] = wz_entries(m, t);
  const double st = std::sin(m.theta);
  const double ct = std::cos(m.theta);
  const double v = m.v();
  const double half = m.b * t / 2.0;
  CVector out = kI * (m.w * m.w * t / (4.0 * m.b * v)) * st * st * gamma_order0(m, t);
  const double lead = m.w / (m.b * v);
  out(2) += kI * lead * std::sin(half) * st * (z1 * st + z2 * ct);
  out(3) += lead * (std::cos(half) * std::conj(z2) + kI * std::sin(half) * ct * (std::conj(z1) * st + std::conj(z2) * ct));
  return out;
}

CMatrix gamma_corrected_wz(const GammaModel& m, double t) {
  const double st = std::sin(m.theta);
  return (1.0 + kI * (m.w * m.w * t * st * st / (4.0 * m.b))) * gamma_wz(m, t);
}

GammaHamiltonian::GammaHamiltonian(GammaModel model) : model_(model) { model_.validate(); }

CMatrix GammaHamiltonian::at(double s) const { return gamma_hamiltonian(model_, model_.time(s)); }

std::optional<CMatrix> GammaHamiltonian::derivative(double s) const {
  return gamma_hamiltonian_rate(model_, model_.time(s)) / model_.v();
}

std::optional<SpectralFrame> GammaHamiltonian::analytic_frame(double s) const {
  SpectralFrame frame = gamma_eigvectors(model_, model_.time(s));
  frame.s = s;
  return frame;
}

double SpinHalfModel::v() const { return w / (2.0 * pi * cycles); }

void SpinHalfModel::validate() const { check_field(b, theta, w, cycles); }

CMatrix spin_half_hamiltonian(const SpinHalfModel& m, double t) {
  const Pauli& p = pauli();
  const double phi = m.w * t;
  const double st = std::sin(m.theta);
  return 0.5 * m.b * (st * std::cos(phi) * p.x + st * std::sin(phi) * p.y + std::cos(m.theta) * p.z);
}

CMatrix spin_half_hamiltonian_rate(const SpinHalfModel& m, double t) {
  const Pauli& p = pauli();
  const double phi = m.w * t;
  return 0.5 * m.b * m.w * std::sin(m.theta) * (-std::sin(phi) * p.x + std::cos(phi) * p.y);
}

SpectralFrame spin_half_eigvectors(const SpinHalfModel& m, double t) {
  const Complex e = std::exp(kI * (m.w * t));
  const double c = std::cos(m.theta / 2.0);
  const double s = std::sin(m.theta / 2.0);
  SpectralFrame frame;
  frame.s = t * m.v();
  CMatrix ground(2, 1), excited(2, 1);
  ground << s, -e * c;
  excited << c, e * s;
  frame.levels.push_back(Level{-0.5 * m.b, ground});
  frame.levels.push_back(Level{0.5 * m.b, excited});
  return frame;
}

CVector spin_half_exact(const SpinHalfModel& m, double t, const CVector& psi0) {
  if (psi0.size() != 2) throw Error(ErrorKind::kDimensionMismatch, "spin-1/2 state needs two components");
  const Pauli& p = pauli();
  const double nx = m.b * std::sin(m.theta);
  const double nz = m.b * std::cos(m.theta) - m.w;
  const double omega = std::hypot(nx, nz);
  CMatrix rotating = std::cos(omega * t / 2.0) * CMatrix::Identity(2, 2);
  if (omega > 0.0) rotating -= kI * std::sin(omega * t / 2.0) * (nx * p.x + nz * p.z) / omega;
  CMatrix frame = CMatrix::Zero(2, 2);
  frame(0, 0) = std::exp(-kI * (m.w * t / 2.0));
  frame(1, 1) = std::exp(kI * (m.w * t / 2.0));
  return frame * rotating * psi0;
}

Complex spin_half_berry_holonomy(const SpinHalfModel& m, double t) {
  return std::exp(-kI * (m.w * t / 2.0) * (1.0 + std::cos(m.theta)));
}

SpinHalfHamiltonian::SpinHalfHamiltonian(SpinHalfModel model) : model_(model) { model_.validate(); }

CMatrix SpinHalfHamiltonian::at(double s) const { return spin_half_hamiltonian(model_, model_.time(s)); }

std::optional<CMatrix> SpinHalfHamiltonian::derivative(double s) const {
  return spin_half_hamiltonian_rate(model_, model_.time(s)) / model_.v();
}

std::optional<SpectralFrame> SpinHalfHamiltonian::analytic_frame(double s) const {
  SpectralFrame frame = spin_half_eigvectors(model_, model_.time(s));
  frame.s = s;
  return frame;
}

}  // namespace dapt
