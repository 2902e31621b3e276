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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "nbvqpco/kron.hpp"
#include "nbvqpco/polyode.hpp"
#include "oracles.hpp"

using namespace nbvqpco;

namespace {

BurgersConfig paper_config() {
  BurgersConfig cfg;
  cfg.L = 0.5;
  cfg.T = 0.35;
  cfg.n_x = 4;
  cfg.n_t = 8;
  cfg.nu = 0.07;
  cfg.x_p_index = 2;
  return cfg;
}

// Row-by-row convective stencil -u_i (u_{i+1} - u_{i-1})/(2 dx) with
// homogeneous Dirichlet neighbors, written directly from the difference
// scheme.
Vector stencil_rhs(const BurgersConfig& cfg, double nu, const Vector& u) {
  const double dx = cfg.dx();
  const Index n = cfg.n_x;
  Vector out(n);
  for (Index i = 0; i < n; ++i) {
    const double left = i > 0 ? u[i - 1] : 0.0;
    const double right = i + 1 < n ? u[i + 1] : 0.0;
    out[i] = -u[i] * (right - left) / (2.0 * dx) +
             nu * (right - 2.0 * u[i] + left) / (2.0 * dx * dx);
  }
  return out;
}

}  // namespace

TEST_CASE("kron_power follows the row-major definition") {
  Vector x(2);
  x << 1, 2;
  const Vector sq = kron_power(x, 2);
  REQUIRE(sq.size() == 4);
  CHECK(sq[0] == 1);
  CHECK(sq[1] == 2);
  CHECK(sq[2] == 2);
  CHECK(sq[3] == 4);

  const Vector zeroth = kron_power(x, 0);
  REQUIRE(zeroth.size() == 1);
  CHECK(zeroth[0] == 1.0);
}

TEST_CASE("kron power norm is multiplicative") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const Vector x = oracle::random_vec(5, seed);
    for (int i = 1; i <= 4; ++i) {
      CHECK_THAT(kron_power(x, i).norm(),
                 Catch::Matchers::WithinRel(std::pow(x.norm(), i), 1e-12));
    }
  }
  // Normalized Burgers initial state in particular.
  const QuadODE ode = discretize_burgers(paper_config());
  CHECK_THAT(kron_power(ode.u0, 2).norm(),
             Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("kron_power respects the size cap") {
  const Index old_cap = size_cap();
  set_size_cap(1 << 10);
  Vector x = Vector::Ones(10);
  CHECK_THROWS_AS(kron_power(x, 4), SizeCapError);
  set_size_cap(old_cap);
}

TEST_CASE("burgers grid constants match the reference setup") {
  const BurgersConfig cfg = paper_config();
  CHECK_THAT(cfg.dx(), Catch::Matchers::WithinAbs(0.1, 1e-15));
  CHECK_THAT(cfg.dt(), Catch::Matchers::WithinAbs(0.05, 1e-15));
}

TEST_CASE("burgers initial condition is the normalized sine") {
  const QuadODE ode = discretize_burgers(paper_config());
  REQUIRE(ode.u0.size() == 4);

  // Oracle: direct arithmetic sin((i-1) 0.4 pi), then normalize.
  Vector raw(4);
  for (int i = 0; i < 4; ++i) {
    raw[i] = std::sin(0.4 * std::numbers::pi * i);
  }
  const Vector expected = raw / raw.norm();
  CHECK((ode.u0 - expected).lpNorm<Eigen::Infinity>() < 1e-14);

  // Frozen six-digit values.
  const double c = 0.791684;
  CHECK_THAT(ode.u0[0], Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(ode.u0[1], Catch::Matchers::WithinAbs(c * 0.951057, 2e-6));
  CHECK_THAT(ode.u0[2], Catch::Matchers::WithinAbs(c * 0.587785, 2e-6));
  CHECK_THAT(ode.u0[3], Catch::Matchers::WithinAbs(-c * 0.587785, 2e-6));
  CHECK_THAT(ode.u0.norm(), Catch::Matchers::WithinAbs(1.0, 1e-14));
}

TEST_CASE("burgers quadratic operator has the stencil nonzeros") {
  const QuadODE ode = discretize_burgers(paper_config());
  const Matrix f2 = Matrix(ode.F2);
  // 1-based (row, col) -> value, re-derived from the stencil with Dirichlet
  // rows; scale 1/(2 dx) = 5.
  const std::vector<std::tuple<int, int, double>> expected = {
      {1, 2, -5.0},  {2, 5, 5.0},  {2, 7, -5.0},
      {3, 10, 5.0},  {3, 12, -5.0}, {4, 15, 5.0},
  };
  Index nnz = 0;
  for (Index r = 0; r < f2.rows(); ++r) {
    for (Index c = 0; c < f2.cols(); ++c) {
      if (f2(r, c) != 0.0) ++nnz;
    }
  }
  CHECK(nnz == static_cast<Index>(expected.size()));
  for (const auto& [r, c, v] : expected) {
    CHECK_THAT(f2(r - 1, c - 1), Catch::Matchers::WithinAbs(v, 1e-13));
  }
}

TEST_CASE("eval_rhs equals the scalar stencil row by row") {
  const BurgersConfig cfg = paper_config();
  const QuadODE ode = discretize_burgers(cfg);

  CHECK(eval_rhs(ode, 0.0, Vector::Zero(4)).norm() == 0.0);

  for (unsigned seed = 0; seed < 100; ++seed) {
    const Vector u = oracle::random_vec(4, 1000 + seed);
    const Vector got = eval_rhs(ode, 0.0, u);
    const Vector want = stencil_rhs(cfg, cfg.nu, u);
    CHECK((got - want).lpNorm<Eigen::Infinity>() < 1e-13);
  }

  // At the initial condition in particular.
  const Vector got = eval_rhs(ode, 0.0, ode.u0);
  const Vector want = stencil_rhs(cfg, cfg.nu, ode.u0);
  CHECK((got - want).lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("quadratic term off reduces to the linear evaluation") {
  const Index n = 3;
  SparseMatrix f1(n, n);
  f1.coeffRef(0, 0) = -1.0;
  f1.coeffRef(1, 1) = -2.0;
  f1.coeffRef(2, 0) = 0.5;
  const SparseMatrix f2(n, n * n);
  Vector u0(n);
  u0 << 0.1, 0.2, 0.3;
  const QuadODE ode = QuadODE::make(
      n, [n](double t) { return Vector::Constant(n, t).eval(); }, f1, f2, u0);

  const Vector u = oracle::random_vec(n, 9);
  const Vector got = eval_rhs(ode, 0.7, u);
  const Vector want = Vector::Constant(n, 0.7) + Matrix(f1) * u;
  CHECK((got - want).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("viscosity zero gives a vanishing linear operator") {
  BurgersConfig cfg = paper_config();
  cfg.nu = 0.0;
  const QuadODE ode = discretize_burgers(cfg);
  CHECK(Matrix(ode.F1).norm() == 0.0);
  REQUIRE(ode.param_split.has_value());
  CHECK(ode.param_split->nu == 0.0);
  CHECK(Matrix(ode.param_split->F1_base).norm() > 0.0);
}

TEST_CASE("parameter replacement rescales the linear part") {
  const QuadODE ode = discretize_burgers(paper_config());
  const QuadODE other = ode.with_parameter(0.14);
  CHECK((Matrix(other.F1) - 2.0 * Matrix(ode.F1)).norm() < 1e-15);
}

TEST_CASE("burgers rejects degenerate grids") {
  BurgersConfig cfg = paper_config();
  cfg.n_x = 1;
  CHECK_THROWS_AS(discretize_burgers(cfg), std::invalid_argument);
  cfg = paper_config();
  cfg.x_p_index = 5;
  CHECK_THROWS_AS(discretize_burgers(cfg), std::invalid_argument);
}

TEST_CASE("burgers config loads from flat key/value text") {
  const auto flat = FlatConfig::parse_string(
      "L = 0.5\nT = 0.35\nn_x = 4\nn_t = 8\nnu = 0.07\nx_p_index = 2\n");
  const BurgersConfig cfg = BurgersConfig::from_config(flat);
  CHECK(cfg.n_x == 4);
  CHECK(cfg.nu == 0.07);
  CHECK(cfg.x_p_index == 2);
}

TEST_CASE("eval_rhs rejects mismatched state length") {
  const QuadODE ode = discretize_burgers(paper_config());
  CHECK_THROWS_AS(eval_rhs(ode, 0.0, Vector::Zero(3)), std::invalid_argument);
}
