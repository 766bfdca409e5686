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

#include <random>

namespace dapt::testing {

inline CMatrix random_matrix(Index n, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

inline CMatrix random_anti_hermitian(Index n, std::mt19937& rng) {
  const CMatrix m = random_matrix(n, rng);
  return 0.5 * (m - m.adjoint());
}

inline CMatrix random_hermitian(Index n, std::mt19937& rng) {
  const CMatrix m = random_matrix(n, rng);
  return 0.5 * (m + m.adjoint());
}

inline CMatrix random_unitary(Index n, std::mt19937& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(n, rng));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace dapt::testing
