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

#include <algorithm>
#include <sstream>

#include "nbvqpco/carleman.hpp"
#include "nbvqpco/io.hpp"
#include "nbvqpco/kron.hpp"
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

}  // namespace

TEST_CASE("transfer block with one slot is the operator itself") {
  const QuadODE ode = discretize_burgers(paper_config());
  CHECK((Matrix(transfer_block(ode.F1, 1, 4)) - Matrix(ode.F1)).norm() == 0.0);
  CHECK((Matrix(transfer_block(ode.F2, 1, 4)) - Matrix(ode.F2)).norm() == 0.0);
}

TEST_CASE("transfer block with two slots is the Kronecker sum") {
  const QuadODE ode = discretize_burgers(paper_config());
  const Matrix f1 = Matrix(ode.F1);
  const Matrix id = Matrix::Identity(4, 4);
  const Matrix want =
      oracle::kron_mat(f1, id) + oracle::kron_mat(id, f1);
  CHECK((Matrix(transfer_block(ode.F1, 2, 4)) - want).norm() < 1e-14);
}

TEST_CASE("transfer block drives the derivative of the Kronecker square") {
  // Oracle: finite-difference derivative of u(t) x u(t) along a
  // high-accuracy RK4 trajectory.
  const BurgersConfig cfg = paper_config();
  const QuadODE ode = discretize_burgers(cfg);
  const SparseMatrix a22 = transfer_block(ode.F1, 2, 4);
  const SparseMatrix a23 = transfer_block(ode.F2, 2, 4);
  REQUIRE(a23.rows() == 16);
  REQUIRE(a23.cols() == 64);

  auto rhs = [&](double t, const oracle::Vec& u) {
    return oracle::Vec(eval_rhs(ode, t, u));
  };
  const double t_probe = 0.1;
  const double dt = 1e-5;
  const long steps = 4000;
  const auto traj = oracle::rk4(rhs, ode.u0, t_probe + dt, steps);
  const auto traj_minus = oracle::rk4(rhs, ode.u0, t_probe - dt, steps);
  const auto traj_mid = oracle::rk4(rhs, ode.u0, t_probe, steps);

  const Vector u_plus = traj.back();
  const Vector u_minus = traj_minus.back();
  const Vector u_mid = traj_mid.back();
  const Vector fd =
      (kron_power(u_plus, 2) - kron_power(u_minus, 2)) / (2.0 * dt);
  const Vector analytic =
      a22 * kron_power(u_mid, 2) + a23 * kron_power(u_mid, 3);
  CHECK((fd - analytic).lpNorm<Eigen::Infinity>() < 1e-6);
}

TEST_CASE("transfer block validates the operator width") {
  const QuadODE ode = discretize_burgers(paper_config());
  SparseMatrix bad(4, 5);
  CHECK_THROWS_AS(transfer_block(bad, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(transfer_block(ode.F1, 0, 4), std::invalid_argument);
}

TEST_CASE("level one lift is the identity embedding") {
  const QuadODE ode = discretize_burgers(paper_config());
  const CarlemanSystem sys = build_carleman(ode, 1);
  CHECK(sys.N_c == 4);
  CHECK((Matrix(sys.matrix_at(0.0)) - Matrix(ode.F1)).norm() == 0.0);
  CHECK((sys.w0 - ode.u0).norm() == 0.0);
  CHECK(sys.b_at(0.0).norm() == 0.0);
}

TEST_CASE("lifted dimension follows the geometric sum") {
  const QuadODE ode = discretize_burgers(paper_config());
  CHECK(build_carleman(ode, 2).N_c == 20);  // (4^3 - 4)/3
  CHECK(build_carleman(ode, 3).N_c == 84);
  for (int level = 1; level <= 3; ++level) {
    Index want = 0;
    for (int i = 1; i <= level; ++i) want += ipow(4, i);
    CHECK(build_carleman(ode, level).N_c == want);
  }
}

TEST_CASE("parameter split recombines linearly in the viscosity") {
  const QuadODE ode = discretize_burgers(paper_config());
  const CarlemanSystem at_07 = build_carleman(ode, 2);
  const CarlemanSystem at_11 = build_carleman(ode.with_parameter(0.11), 2);
  REQUIRE(at_07.split.has_value());

  // Oracle: two direct builds differ by (nu1 - nu2) A_N2.
  const Matrix diff =
      Matrix(at_11.matrix_at(0.0)) - Matrix(at_07.matrix_at(0.0));
  const Matrix scaled = (0.11 - 0.07) * Matrix(at_07.split->A2);
  CHECK((diff - scaled).lpNorm<Eigen::Infinity>() < 1e-13);

  // Exact recombination at the build's own parameter.
  const Matrix recombined =
      Matrix(at_07.split->A1) + 0.07 * Matrix(at_07.split->A2);
  CHECK((recombined - Matrix(at_07.matrix_at(0.0))).lpNorm<Eigen::Infinity>() ==
        0.0);
}

TEST_CASE("split separates diagonal from off-diagonal blocks") {
  const QuadODE ode = discretize_burgers(paper_config());
  const CarlemanSystem sys = build_carleman(ode, 2);
  REQUIRE(sys.split.has_value());
  const LiftLayout layout = LiftLayout::make_compact(4, 2);
  const Matrix a1 = Matrix(sys.split->A1);
  const Matrix a2 = Matrix(sys.split->A2);
  // A2 carries only diagonal blocks, A1 only off-diagonal ones.
  for (int i = 1; i <= 2; ++i) {
    const Index off = layout.block_offset(i);
    const Index size = layout.block_size(i);
    CHECK(a1.block(off, off, size, size).norm() == 0.0);
  }
  CHECK(a2.block(layout.block_offset(1), layout.block_offset(2), 4, 16)
            .norm() == 0.0);
}

TEST_CASE("lift identity holds below the truncation level") {
  const QuadODE ode = discretize_burgers(paper_config());
  for (unsigned seed : {4u, 5u}) {
    const Vector u = oracle::random_vec(4, seed);
    CHECK(lifted_rhs_residual(ode, 3, u) < 1e-12);
    CHECK(lifted_block_residual(ode, 3, 1, u) < 1e-12);
    CHECK(lifted_block_residual(ode, 3, 2, u) < 1e-12);
    // The truncated block drops the coupling to the next power.
    CHECK(lifted_block_residual(ode, 3, 3, u) > 1e-6);
  }
}

TEST_CASE("linear systems close exactly at every block") {
  // F2 = 0: no closure error at any level.
  const Index n = 2;
  SparseMatrix f1(n, n);
  f1.coeffRef(0, 0) = -1.0;
  f1.coeffRef(1, 1) = -0.5;
  SparseMatrix f2(n, n * n);
  Vector u0(n);
  u0 << 0.3, 0.4;
  const QuadODE linear = QuadODE::make(n, nullptr, f1, f2, u0);
  const Vector u = oracle::random_vec(n, 11);
  for (int block = 1; block <= 3; ++block) {
    CHECK(lifted_block_residual(linear, 3, block, u) < 1e-13);
  }
}

TEST_CASE("constant forcing fills the sub-diagonal coupling") {
  const Index n = 2;
  SparseMatrix f1(n, n);
  f1.coeffRef(0, 0) = -1.0;
  f1.coeffRef(1, 1) = -2.0;
  SparseMatrix f2(n, n * n);
  f2.coeffRef(0, 1) = 0.2;
  Vector u0(n);
  u0 << 0.3, 0.1;
  Vector f0(n);
  f0 << 0.5, -0.25;
  const QuadODE forced = QuadODE::make(
      n, [f0](double) { return f0; }, f1, f2, u0);

  const CarlemanSystem sys = build_carleman(forced, 3);
  CHECK(sys.has_forcing);
  // b(t) carries the forcing in the first block only.
  const Vector b = sys.b_at(0.0);
  CHECK((b.head(n) - f0).norm() == 0.0);
  CHECK(b.tail(sys.N_c - n).norm() == 0.0);
  // With the forcing blocks assembled, the lift identity still closes below
  // the truncation level.
  const Vector u = oracle::random_vec(n, 12);
  CHECK(lifted_rhs_residual(forced, 3, u) < 1e-12);
  // And the generator actually changes against the unforced build.
  const QuadODE unforced = QuadODE::make(n, nullptr, f1, f2, u0);
  const CarlemanSystem plain = build_carleman(unforced, 3);
  CHECK((Matrix(sys.matrix_at(0.0)) - Matrix(plain.matrix_at(0.0))).norm() >
        0.1);
}

TEST_CASE("padded layout aligns every block to its own size") {
  const LiftLayout layout = LiftLayout::make_padded(4, 3);
  CHECK(layout.register_size() == 128);  // 2^(2*3+1)
  CHECK(layout.qubits() == 7);
  CHECK(layout.lifted_dim() == 84);
  for (int i = 1; i <= 3; ++i) {
    CHECK(layout.block_offset(i) == ipow(4, i));
    CHECK(layout.block_offset(i) % layout.block_size(i) == 0);
  }

  // Embedding round trip.
  const Vector w = oracle::random_vec(layout.lifted_dim(), 21);
  const Vector embedded = layout.embed_vector(w);
  CHECK(embedded.size() == 128);
  CHECK_THAT(embedded.norm(), Catch::Matchers::WithinRel(w.norm(), 1e-14));
  const SparseMatrix p = layout.embedding();
  CHECK((SparseMatrix(p.transpose()) * embedded - w).norm() == 0.0);

  CHECK_THROWS_AS(LiftLayout::make_padded(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(LiftLayout::make_padded(1, 2), std::invalid_argument);
}

TEST_CASE("carleman matrices export in coordinate text form") {
  const QuadODE ode = discretize_burgers(paper_config());
  const CarlemanSystem sys = build_carleman(ode, 2);
  std::ostringstream os;
  write_coo(os, sys.matrix_at(0.0));
  const std::string text = os.str();
  CHECK(text.find("# rows 20 cols 20") != std::string::npos);
  // Every structural nonzero appears as a "row col value" line.
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        1 + sys.matrix_at(0.0).nonZeros());
}
