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

#include "nbvqpco/linsys.hpp"

#include <limits>
#include <vector>

#include <Eigen/SVD>
#include <Eigen/SparseLU>

namespace nbvqpco {

namespace {

void add_block(std::vector<Triplet>& out, const SparseMatrix& block,
               Index row0, Index col0, double scale = 1.0) {
  for (int k = 0; k < block.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(block, k); it; ++it) {
      out.emplace_back(row0 + it.row(), col0 + it.col(), scale * it.value());
    }
  }
}

void add_identity(std::vector<Triplet>& out, Index n, Index row0, Index col0,
                  double scale) {
  for (Index i = 0; i < n; ++i) out.emplace_back(row0 + i, col0 + i, scale);
}

}  // namespace

BlockLinearSystem assemble(const CarlemanSystem& sys, double T, Index n_t,
                           Scheme scheme, bool padded) {
  if (n_t < 2) throw std::invalid_argument("n_t must be >= 2");
  if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (padded && !is_power_of_two(n_t)) {
    throw std::invalid_argument("padded assembly needs n_t a power of two");
  }

  BlockLinearSystem out;
  out.layout = padded ? LiftLayout::make_padded(sys.n_x, sys.N)
                      : LiftLayout::make_compact(sys.n_x, sys.N);
  out.scheme = scheme;
  out.M = n_t - 1;
  out.h = T / static_cast<double>(out.M);
  out.constant_blocks = !sys.has_forcing;

  const Index q = out.layout.register_size();
  const Index dim = q * n_t;
  check_size_cap(dim, "block linear system");

  const double h = out.h;
  std::vector<Triplet> trip;
  std::vector<Triplet> trip_a2;  // parameter-scaled part
  add_identity(trip, q, 0, 0, 1.0);

  const bool constant = !sys.has_forcing;
  SparseMatrix a_const;
  if (constant) a_const = out.layout.embed_matrix(sys.matrix_at(0.0));

  for (Index k = 1; k <= out.M; ++k) {
    const double tk = static_cast<double>(k - 1) * h;
    const SparseMatrix a =
        constant ? a_const : out.layout.embed_matrix(sys.matrix_at(tk));
    const Index row0 = k * q;
    if (scheme == Scheme::kForward) {
      add_identity(trip, q, row0, row0, 1.0);
      add_identity(trip, q, row0, row0 - q, -1.0);
      add_block(trip, a, row0, row0 - q, -h);
    } else {
      add_identity(trip, q, row0, row0, 1.0);
      add_block(trip, a, row0, row0, -h);
      add_identity(trip, q, row0, row0 - q, -1.0);
    }
  }

  out.A_tilde.resize(dim, dim);
  out.A_tilde.setFromTriplets(trip.begin(), trip.end());

  out.b_tilde = Vector::Zero(dim);
  out.b_tilde.head(q) = out.layout.embed_vector(sys.w0);
  for (Index k = 1; k <= out.M; ++k) {
    out.b_tilde.segment(k * q, q) =
        h * out.layout.embed_vector(sys.b_at(static_cast<double>(k - 1) * h));
  }

  if (sys.split) {
    const SparseMatrix a2 = out.layout.embed_matrix(sys.split->A2);
    std::vector<Triplet> t2;
    for (Index k = 1; k <= out.M; ++k) {
      const Index row0 = k * q;
      const Index col0 = (scheme == Scheme::kForward) ? row0 - q : row0;
      add_block(t2, a2, row0, col0, -h);
    }
    BlockLinearSystem::Split split;
    split.nu = sys.ode.param_split ? sys.ode.param_split->nu : 0.0;
    split.A2.resize(dim, dim);
    split.A2.setFromTriplets(t2.begin(), t2.end());
    split.A1 = out.A_tilde - split.nu * split.A2;
    split.A1.prune(0.0);
    out.split = std::move(split);

    BlockLinearSystem::LiftSplit lift;
    lift.A_N1 = out.layout.embed_matrix(sys.split->A1);
    lift.A_N2 = a2;
    out.lift_split = std::move(lift);
  }
  return out;
}

SparseMatrix system_matrix_at(const BlockLinearSystem& sys, double nu) {
  if (!sys.split) throw std::logic_error("system carries no parameter split");
  SparseMatrix m = sys.split->A1 + nu * sys.split->A2;
  return m;
}

DirectSolution solve_direct(const BlockLinearSystem& sys) {
  const Index q = sys.step_stride();
  DirectSolution sol;
  sol.w = Vector::Zero(sys.dim());
  sol.w.head(q) = sys.b_tilde.head(q);

  if (sys.scheme == Scheme::kForward) {
    // w^k = (I + A h) w^{k-1} + b_k; the sub-diagonal block of A_tilde is
    // -(I + A h), so reuse it directly.
    for (Index k = 1; k <= sys.M; ++k) {
      const Index row0 = k * q;
      Vector rhs = sys.b_tilde.segment(row0, q);
      const Vector prev = sol.w.segment(row0 - q, q);
      // step = -(sub block) * prev
      Vector step = Vector::Zero(q);
      for (Index col = row0 - q; col < row0; ++col) {
        for (SparseMatrix::InnerIterator it(sys.A_tilde, col); it; ++it) {
          if (it.row() >= row0 && it.row() < row0 + q) {
            step[it.row() - row0] -= it.value() * prev[col - (row0 - q)];
          }
        }
      }
      sol.w.segment(row0, q) = step + rhs;
    }
  } else {
    // Diagonal blocks I - A_N((k-1)h) h; constant (factored once) unless the
    // generator is time dependent.
    Eigen::SparseLU<SparseMatrix> lu;
    bool factored = false;
    for (Index k = 1; k <= sys.M; ++k) {
      const Index row0 = k * q;
      if (!factored || !sys.constant_blocks) {
        std::vector<Triplet> t;
        for (Index col = row0; col < row0 + q; ++col) {
          for (SparseMatrix::InnerIterator it(sys.A_tilde, col); it; ++it) {
            if (it.row() >= row0 && it.row() < row0 + q) {
              t.emplace_back(it.row() - row0, col - row0, it.value());
            }
          }
        }
        SparseMatrix diag(q, q);
        diag.setFromTriplets(t.begin(), t.end());
        lu.compute(diag);
        if (lu.info() != Eigen::Success) {
          throw std::runtime_error("singular diagonal block at time step " +
                                   std::to_string(k));
        }
        factored = true;
      }
      const Vector rhs =
          sys.b_tilde.segment(row0, q) + sol.w.segment(row0 - q, q);
      const Vector next = lu.solve(rhs);
      if (lu.info() != Eigen::Success || !next.allFinite()) {
        throw std::runtime_error("solve failed at time step " +
                                 std::to_string(k));
      }
      sol.w.segment(row0, q) = next;
    }
  }

  const double norm = sol.w.norm();
  if (norm == 0.0) {
    sol.w_normalized = sol.w;
  } else {
    sol.w_normalized = sol.w / norm;
  }
  return sol;
}

double condition_number(const SparseMatrix& m) {
  check_size_cap(m.rows() * m.cols(), "dense SVD");
  const Matrix dense = Matrix(m);
  Eigen::JacobiSVD<Matrix> svd(dense);
  const auto& sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv[0] / smin;
}

double condition_number(const BlockLinearSystem& sys) {
  return condition_number(sys.A_tilde);
}

double spectral_norm(const SparseMatrix& m) {
  check_size_cap(m.rows() * m.cols(), "dense SVD");
  const Matrix dense = Matrix(m);
  Eigen::JacobiSVD<Matrix> svd(dense);
  return svd.singularValues()[0];
}

}  // namespace nbvqpco
