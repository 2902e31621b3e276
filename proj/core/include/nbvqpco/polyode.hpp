// Copyright 2026 The nbvqpco authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <optional>

#include "nbvqpco/config.hpp"
#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// Autonomous quadratic ODE  du/dt = F0(t) + F1 u + F2 u^[2]  with the
/// quadratic operator acting on the row-major Kronecker square of the state.
/// Immutable after construction; all members may be read concurrently.
struct QuadODE {
  Index n_x = 0;
  std::function<Vector(double)> F0;  // forcing, length n_x; never null
  SparseMatrix F1;                   // n_x x n_x
  SparseMatrix F2;                   // n_x x n_x^2
  Vector u0;

  /// Present when F1 = nu * F1_base; keeps parameter-dependent assembly
  /// linear in nu.
  struct ParamSplit {
    SparseMatrix F1_base;
    double nu = 0.0;
  };
  std::optional<ParamSplit> param_split;

  /// Same ODE with the viscosity-like parameter replaced. Requires
  /// param_split.
  QuadODE with_parameter(double nu) const;

  bool forcing_is_zero() const { return forcing_zero_; }

  /// Construction helper validating dimensions (F2 columns must be n_x^2,
  /// F0(0) length n_x). Zero-forcing instances pass `nullptr` for F0.
  static QuadODE make(Index n_x, std::function<Vector(double)> F0,
                      SparseMatrix F1, SparseMatrix F2, Vector u0,
                      std::optional<ParamSplit> split = std::nullopt);

 private:
  bool forcing_zero_ = false;
};

/// Viscous Burgers problem on [0, L] with homogeneous Dirichlet boundaries,
/// discretized by central differences on n_x interior points.
struct BurgersConfig {
  double L = 0.5;
  double T = 0.35;
  Index n_x = 4;
  Index n_t = 8;
  double nu = 0.07;
  Index x_p_index = 2;  // 1-based probe grid index
  std::function<double(double, double)> forcing;  // f(x, t); null means zero

  double dx() const { return L / static_cast<double>(n_x + 1); }
  double dt() const { return T / static_cast<double>(n_t - 1); }

  void validate() const;

  /// Flat key/value load (keys: L, T, n_x, n_t, nu, x_p_index).
  static BurgersConfig from_config(const FlatConfig& cfg);
  static BurgersConfig from_file(const std::string& path);
};

/// Semi-discretized Burgers ODE. F1 = nu/(2 dx^2) tridiag(1,-2,1) with the
/// parameter split populated, F2 holds the convective stencil
/// -u_i (u_{i+1}-u_{i-1})/(2 dx) with Dirichlet rows, and u0 is the sampled
/// sine initial condition scaled to unit norm.
QuadODE discretize_burgers(const BurgersConfig& cfg);

/// Right-hand side F0(t) + F1 u + F2 u^[2].
Vector eval_rhs(const QuadODE& ode, double t, const Vector& u);

}  // namespace nbvqpco
