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

#include "dapt/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace dapt {

/// Finite-difference accuracy for `central_derivative`.
enum class Stencil { kSecondOrder, kFourthOrder };

// ---------------------------------------------------------------- predicates

/// Frobenius norm of M - M^dagger.
double hermiticity_error(const CMatrix& m);
/// Frobenius norm of A + A^dagger.
double anti_hermiticity_error(const CMatrix& a);
/// Frobenius norm of U^dagger U - I.
double unitarity_error(const CMatrix& u);

inline bool is_hermitian(const CMatrix& m, double tol) { return hermiticity_error(m) <= tol; }
inline bool is_anti_hermitian(const CMatrix& a, double tol) { return anti_hermiticity_error(a) <= tol; }
inline bool is_unitary(const CMatrix& u, double tol) { return unitarity_error(u) <= tol; }

// ------------------------------------------------------- unitary exponentials

/// exp(A dt) for anti-Hermitian A, through the eigendecomposition of the
/// Hermitian matrix iA. Throws NotAntiHermitian when ||A + A^dagger|| exceeds
/// `tol` (negative tol selects 1e-10 * max(1, ||A||)).
CMatrix unitary_expm(const CMatrix& a, double dt, double tol = -1.0);

/// Anti-Hermitian K with exp(K) = W for unitary W (principal branch).
CMatrix unitary_log(const CMatrix& w);

/// Unitary factor of the polar decomposition M = W P, from the SVD.
/// `min_singular` receives the smallest singular value when non-null.
CMatrix polar_unitary(const CMatrix& m, double* min_singular = nullptr);

// ---------------------------------------------------------- grid calculus

namespace detail {
template <class T>
T zero_like(const T& x) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, Complex>) {
    return T{};
  } else {
    return T::Zero(x.rows(), x.cols());
  }
}
[[noreturn]] void throw_grid_too_small(std::size_t have, std::size_t need);
}  // namespace detail

/// Antiderivative samples F(s_k) = int_0^{s_k} f on a uniform grid with
/// spacing h. Even nodes use composite Simpson; odd nodes close the last
/// half-panel with the three-point rule (h/12)(5 f0 + 8 f1 - f2), which
/// keeps the local error O(h^4).
template <class T>
std::vector<T> cumulative_quadrature(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  if (n < 3) detail::throw_grid_too_small(n, 3);
  std::vector<T> out(n, detail::zero_like(f[0]));
  for (std::size_t k = 2; k < n; k += 2) {
    out[k] = out[k - 2] + (h / 3.0) * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
  }
  for (std::size_t k = 1; k < n; k += 2) {
    if (k + 1 < n) {
      out[k] = out[k - 1] + (h / 12.0) * (5.0 * f[k - 1] + 8.0 * f[k] - f[k + 1]);
    } else {
      out[k] = out[k - 1] + (h / 12.0) * (-f[k - 2] + 8.0 * f[k - 1] + 5.0 * f[k]);
    }
  }
  return out;
}

template <class T>
std::vector<T> cumulative_quadrature(const std::vector<T>& f, double h) {
  return cumulative_quadrature(std::span<const T>(f), h);
}

/// d/ds of grid samples. Second order: central differences inside, three-point
/// one-sided formulas at the ends. Fourth order: five-point stencils
/// throughout, shifted near the ends.
template <class T>
std::vector<T> central_derivative(std::span<const T> f, double h, Stencil stencil = Stencil::kSecondOrder) {
  const std::size_t n = f.size();
  std::vector<T> out(n, n ? detail::zero_like(f[0]) : T{});
  if (stencil == Stencil::kSecondOrder) {
    if (n < 3) detail::throw_grid_too_small(n, 3);
    const double c = 1.0 / (2.0 * h);
    for (std::size_t k = 1; k + 1 < n; ++k) out[k] = c * (f[k + 1] - f[k - 1]);
    out[0] = c * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
    out[n - 1] = c * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
    return out;
  }
  if (n < 5) detail::throw_grid_too_small(n, 5);
  const double c = 1.0 / (12.0 * h);
  for (std::size_t k = 2; k + 2 < n; ++k) {
    out[k] = c * (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]);
  }
  out[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  out[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  out[n - 1] = c * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]);
  out[n - 2] = c * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]);
  return out;
}

template <class T>
std::vector<T> central_derivative(const std::vector<T>& f, double h, Stencil stencil = Stencil::kSecondOrder) {
  return central_derivative(std::span<const T>(f), h, stencil);
}

/// Cubic Lagrange interpolation of uniform samples at fractional node
/// position x (x = 2.5 is halfway between nodes 2 and 3).
template <class T>
T cubic_interpolate(std::span<const T> f, double x) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  if (n < 4) detail::throw_grid_too_small(f.size(), 4);
  auto j0 = static_cast<std::ptrdiff_t>(std::floor(x)) - 1;
  j0 = std::clamp<std::ptrdiff_t>(j0, 0, n - 4);
  T out = detail::zero_like(f[0]);
  for (std::ptrdiff_t i = 0; i < 4; ++i) {
    double weight = 1.0;
    for (std::ptrdiff_t j = 0; j < 4; ++j) {
      if (j != i) weight *= (x - static_cast<double>(j0 + j)) / static_cast<double>(i - j);
    }
    out = out + weight * f[j0 + i];
  }
  return out;
}

// ------------------------------------------------------------------ fitting

/// Least-squares line through (log x, log y).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// 95% confidence half-width of the slope (Student t, n - 2 dof); infinite
  /// for two points.
  double half_width = std::numeric_limits<double>::infinity();
  std::size_t points = 0;
};

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace dapt
