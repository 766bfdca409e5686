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

#include "dapt/numerics.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <string>

namespace dapt {

namespace detail {
void throw_grid_too_small(std::size_t have, std::size_t need) {
  throw Error(ErrorKind::kGridTooSmall,
              "need at least " + std::to_string(need) + " samples, got " + std::to_string(have));
}
}  // namespace detail

double hermiticity_error(const CMatrix& m) { return (m - m.adjoint()).norm(); }

double anti_hermiticity_error(const CMatrix& a) { return (a + a.adjoint()).norm(); }

double unitarity_error(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).norm();
}

CMatrix unitary_expm(const CMatrix& a, double dt, double tol) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::kDimensionMismatch, "unitary_expm needs a square generator");
  if (tol < 0.0) tol = 1e-10 * std::max(1.0, a.norm());
  if (anti_hermiticity_error(a) > tol) {
    throw Error(ErrorKind::kNotAntiHermitian,
                "||A + A^dagger|| = " + std::to_string(anti_hermiticity_error(a)));
  }
  const CMatrix herm = (kI * a + (kI * a).adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  const auto& vecs = solver.eigenvectors();
  CVector phases(a.rows());
  for (Index i = 0; i < a.rows(); ++i) phases(i) = std::exp(-kI * solver.eigenvalues()(i) * dt);
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

CMatrix unitary_log(const CMatrix& w) {
  Eigen::ComplexSchur<CMatrix> schur(w);
  const CMatrix& q = schur.matrixU();
  const CMatrix& t = schur.matrixT();
  CVector logs(w.rows());
  for (Index i = 0; i < w.rows(); ++i) logs(i) = kI * std::arg(t(i, i));
  CMatrix k = q * logs.asDiagonal() * q.adjoint();
  return (k - k.adjoint()) * 0.5;
}

CMatrix polar_unitary(const CMatrix& m, double* min_singular) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (min_singular != nullptr) {
    *min_singular = svd.singularValues().size() ? svd.singularValues().minCoeff() : 0.0;
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kDimensionMismatch, "fit_loglog: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorKind::kInsufficientSweep, "fit_loglog needs at least 2 points");
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw Error(ErrorKind::kInsufficientSweep, "fit_loglog needs strictly positive data");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw Error(ErrorKind::kInsufficientSweep, "fit_loglog: all x values coincide");
  SlopeFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
      sse += r * r;
    }
    const double dof = static_cast<double>(n - 2);
    const double se = std::sqrt(sse / dof / sxx);
    boost::math::students_t dist(dof);
    fit.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  }
  return fit;
}

}  // namespace dapt
