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

#include "nbvqpco/polyode.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "nbvqpco/kron.hpp"

namespace nbvqpco {

QuadODE QuadODE::make(Index n_x, std::function<Vector(double)> F0,
                      SparseMatrix F1, SparseMatrix F2, Vector u0,
                      std::optional<ParamSplit> split) {
  if (n_x <= 0) throw std::invalid_argument("state dimension must be >= 1");
  if (F1.rows() != n_x || F1.cols() != n_x) {
    throw std::invalid_argument("F1 must be n_x x n_x");
  }
  if (F2.rows() != n_x || F2.cols() != n_x * n_x) {
    throw std::invalid_argument("F2 must be n_x x n_x^2");
  }
  if (u0.size() != n_x) throw std::invalid_argument("u0 must have length n_x");

  QuadODE ode;
  ode.n_x = n_x;
  ode.forcing_zero_ = (F0 == nullptr);
  if (F0 == nullptr) {
    ode.F0 = [n_x](double) { return Vector::Zero(n_x).eval(); };
  } else {
    const Vector probe = F0(0.0);
    if (probe.size() != n_x) {
      throw std::invalid_argument("F0(t) must have length n_x");
    }
    ode.F0 = std::move(F0);
  }
  ode.F1 = std::move(F1);
  ode.F2 = std::move(F2);
  ode.u0 = std::move(u0);
  if (split) {
    const SparseMatrix diff =
        (ode.F1 - split->nu * split->F1_base).pruned(1.0, 1e-14);
    if (diff.nonZeros() != 0) {
      throw std::invalid_argument("param_split inconsistent with F1");
    }
  }
  ode.param_split = std::move(split);
  return ode;
}

QuadODE QuadODE::with_parameter(double nu) const {
  if (!param_split) {
    throw std::logic_error("ODE carries no parameter split");
  }
  QuadODE out = *this;
  out.F1 = nu * param_split->F1_base;
  out.param_split->nu = nu;
  return out;
}

void BurgersConfig::validate() const {
  if (n_x < 2) throw std::invalid_argument("n_x must be >= 2");
  if (n_t < 2) throw std::invalid_argument("n_t must be >= 2");
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (x_p_index < 1 || x_p_index > n_x) {
    throw std::invalid_argument("x_p_index must lie in [1, n_x]");
  }
}

BurgersConfig BurgersConfig::from_config(const FlatConfig& cfg) {
  BurgersConfig out;
  out.L = cfg.get_double("L", out.L);
  out.T = cfg.get_double("T", out.T);
  out.n_x = cfg.get_int("n_x", out.n_x);
  out.n_t = cfg.get_int("n_t", out.n_t);
  out.nu = cfg.get_double("nu", out.nu);
  out.x_p_index = cfg.get_int("x_p_index", out.x_p_index);
  out.validate();
  return out;
}

BurgersConfig BurgersConfig::from_file(const std::string& path) {
  return from_config(FlatConfig::parse_file(path));
}

QuadODE discretize_burgers(const BurgersConfig& cfg) {
  cfg.validate();
  const Index n = cfg.n_x;
  const double dx = cfg.dx();

  SparseMatrix f1_base(n, n);
  {
    std::vector<Triplet> t;
    const double scale = 1.0 / (2.0 * dx * dx);
    for (Index i = 0; i < n; ++i) {
      t.emplace_back(i, i, -2.0 * scale);
      if (i > 0) t.emplace_back(i, i - 1, scale);
      if (i + 1 < n) t.emplace_back(i, i + 1, scale);
    }
    f1_base.setFromTriplets(t.begin(), t.end());
  }

  // Convective stencil -u_i (u_{i+1} - u_{i-1}) / (2 dx). The product
  // u_a u_b sits at row-major index (a-1) n_x + b (1-based). Boundary rows
  // drop the terms that touch u_0 = u_{n_x+1} = 0, so the last row keeps only
  // +u_{n_x} u_{n_x-1}, at column n_x^2 - 1.
  SparseMatrix f2(n, n * n);
  {
    std::vector<Triplet> t;
    const double c = 1.0 / (2.0 * dx);
    for (Index i = 1; i <= n; ++i) {
      const Index diag = (n + 1) * (i - 1) + 1;  // 1-based column of u_i u_i
      if (i > 1) t.emplace_back(i - 1, diag - 1 - 1, c);
      if (i < n) t.emplace_back(i - 1, diag + 1 - 1, -c);
    }
    f2.setFromTriplets(t.begin(), t.end());
  }

  const double k = 2.0 * std::numbers::pi / cfg.L;
  Vector u0(n);
  for (Index i = 0; i < n; ++i) {
    u0[i] = std::sin(k * static_cast<double>(i) * dx);
  }
  const double norm = u0.norm();
  if (norm == 0.0) {
    throw std::runtime_error("initial condition vanishes on the grid");
  }
  u0 /= norm;

  std::function<Vector(double)> forcing = nullptr;
  if (cfg.forcing) {
    auto f = cfg.forcing;
    forcing = [f, n, dx](double t) {
      Vector out(n);
      for (Index i = 0; i < n; ++i) {
        out[i] = f(static_cast<double>(i + 1) * dx, t);
      }
      return out;
    };
  }

  QuadODE::ParamSplit split{f1_base, cfg.nu};
  return QuadODE::make(n, std::move(forcing), cfg.nu * f1_base, std::move(f2),
                       std::move(u0), std::move(split));
}

Vector eval_rhs(const QuadODE& ode, double t, const Vector& u) {
  if (u.size() != ode.n_x) {
    throw std::invalid_argument("state length does not match n_x");
  }
  Vector out = ode.F0(t);
  out += ode.F1 * u;
  out += ode.F2 * kron_power(u, 2);
  return out;
}

}  // namespace nbvqpco
