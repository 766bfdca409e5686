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
#include "dapt/grid.hpp"
#include "dapt/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dapt {

/// A Hermitian matrix-valued function of the rescaled time s in [0, 1].
///
/// Implementations may additionally expose dH/ds and an analytic snapshot
/// eigensystem. When a frame is supplied the spectral stage uses it verbatim
/// and skips numerical diagonalisation and gauge smoothing.
class Hamiltonian {
 public:
  virtual ~Hamiltonian() = default;

  virtual Index dim() const = 0;
  virtual CMatrix at(double s) const = 0;
  virtual std::optional<CMatrix> derivative(double /*s*/) const { return std::nullopt; }
  virtual std::optional<SpectralFrame> analytic_frame(double /*s*/) const { return std::nullopt; }
};

/// Hamiltonian given by callables; the derivative is optional.
class FunctionHamiltonian final : public Hamiltonian {
 public:
  using MatrixFn = std::function<CMatrix(double)>;

  FunctionHamiltonian(Index dim, MatrixFn h, MatrixFn dh = {});

  Index dim() const override { return dim_; }
  CMatrix at(double s) const override { return h_(s); }
  std::optional<CMatrix> derivative(double s) const override;

 private:
  Index dim_;
  MatrixFn h_;
  MatrixFn dh_;
};

/// Hamiltonian known only through samples on a uniform grid. Off-node values
/// come from piecewise cubic interpolation; no analytic derivative.
class SampledHamiltonian final : public Hamiltonian {
 public:
  explicit SampledHamiltonian(std::vector<CMatrix> samples);

  Index dim() const override { return samples_.front().rows(); }
  CMatrix at(double s) const override;

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<CMatrix>& samples() const noexcept { return samples_; }

 private:
  std::vector<CMatrix> samples_;
  Grid grid_;
};

/// Forwards H and dH/ds but hides any analytic eigensystem, forcing the
/// numerical diagonalisation route.
class NumericalFramesView final : public Hamiltonian {
 public:
  explicit NumericalFramesView(const Hamiltonian& inner) : inner_(inner) {}

  Index dim() const override { return inner_.dim(); }
  CMatrix at(double s) const override { return inner_.at(s); }
  std::optional<CMatrix> derivative(double s) const override { return inner_.derivative(s); }

 private:
  const Hamiltonian& inner_;
};

/// H(s_k) on every grid node.
std::vector<CMatrix> sample(const Hamiltonian& h, const Grid& grid);

}  // namespace dapt
