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

#include "nbvqpco/carleman.hpp"

#include <algorithm>
#include <vector>

#include "nbvqpco/kron.hpp"

namespace nbvqpco {

namespace {

void add_block(std::vector<Triplet>& out, const SparseMatrix& block,
               Index row0, Index col0) {
  for (int k = 0; k < block.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(block, k); it; ++it) {
      out.emplace_back(row0 + it.row(), col0 + it.col(), it.value());
    }
  }
}

SparseMatrix forcing_as_matrix(const Vector& f0) {
  SparseMatrix m(f0.size(), 1);
  std::vector<Triplet> t;
  for (Index i = 0; i < f0.size(); ++i) {
    if (f0[i] != 0.0) t.emplace_back(i, 0, f0[i]);
  }
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

LiftLayout LiftLayout::make_padded(Index n_x, int N) {
  if (N < 1) throw std::invalid_argument("truncation level must be >= 1");
  if (n_x < 2 || !is_power_of_two(n_x)) {
    throw std::invalid_argument(
        "padded lift layout needs n_x a power of two and >= 2");
  }
  LiftLayout out{n_x, N, true};
  check_size_cap(out.register_size(), "padded lift register");
  return out;
}

LiftLayout LiftLayout::make_compact(Index n_x, int N) {
  if (N < 1) throw std::invalid_argument("truncation level must be >= 1");
  if (n_x < 1) throw std::invalid_argument("n_x must be >= 1");
  LiftLayout out{n_x, N, false};
  check_size_cap(out.register_size(), "lift register");
  return out;
}

Index LiftLayout::block_size(int i) const {
  if (i < 1 || i > N) throw std::invalid_argument("block index out of range");
  return ipow(n_x, i);
}

Index LiftLayout::block_offset(int i) const {
  if (i < 1 || i > N) throw std::invalid_argument("block index out of range");
  if (padded) return ipow(n_x, i);
  Index off = 0;
  for (int j = 1; j < i; ++j) off += ipow(n_x, j);
  return off;
}

Index LiftLayout::lifted_dim() const {
  Index total = 0;
  for (int i = 1; i <= N; ++i) total += ipow(n_x, i);
  return total;
}

Index LiftLayout::register_size() const {
  if (!padded) return lifted_dim();
  return 2 * ipow(n_x, N);  // 2^(sN+1)
}

int LiftLayout::qubits() const {
  if (!padded) throw std::logic_error("compact layout has no qubit register");
  return log2_exact(register_size());
}

SparseMatrix LiftLayout::embedding() const {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(lifted_dim()));
  Index compact = 0;
  for (int i = 1; i <= N; ++i) {
    const Index off = block_offset(i);
    const Index size = block_size(i);
    for (Index k = 0; k < size; ++k) t.emplace_back(off + k, compact++, 1.0);
  }
  SparseMatrix p(register_size(), lifted_dim());
  p.setFromTriplets(t.begin(), t.end());
  return p;
}

SparseMatrix LiftLayout::embed_matrix(const SparseMatrix& compact) const {
  if (compact.rows() != lifted_dim() || compact.cols() != lifted_dim()) {
    throw std::invalid_argument("matrix does not match the compact lift");
  }
  if (!padded) return compact;
  const SparseMatrix p = embedding();
  return SparseMatrix(p * compact * SparseMatrix(p.transpose()));
}

Vector LiftLayout::embed_vector(const Vector& compact) const {
  if (compact.size() != lifted_dim()) {
    throw std::invalid_argument("vector does not match the compact lift");
  }
  if (!padded) return compact;
  Vector out = Vector::Zero(register_size());
  Index pos = 0;
  for (int i = 1; i <= N; ++i) {
    out.segment(block_offset(i), block_size(i)) =
        compact.segment(pos, block_size(i));
    pos += block_size(i);
  }
  return out;
}

SparseMatrix transfer_block(const SparseMatrix& F_j, int i, Index n_x) {
  if (i < 1) throw std::invalid_argument("block row index must be >= 1");
  if (F_j.rows() != n_x) {
    throw std::invalid_argument("operator must have n_x rows");
  }
  int j = -1;
  for (int cand = 0; cand <= 2; ++cand) {
    if (F_j.cols() == ipow(n_x, cand)) {
      j = cand;
      break;
    }
  }
  if (j < 0) {
    throw std::invalid_argument(
        "operator width must be n_x^j for some j in {0,1,2}");
  }
  check_size_cap(ipow(n_x, i) * ipow(n_x, i + j - 1), "transfer block");

  SparseMatrix sum(ipow(n_x, i), ipow(n_x, i + j - 1));
  for (int p = 1; p <= i; ++p) {
    SparseMatrix term = sparse_identity(ipow(n_x, p - 1));
    term = kron_sparse(term, F_j);
    term = kron_sparse(term, sparse_identity(ipow(n_x, i - p)));
    sum += term;
  }
  return sum;
}

CarlemanSystem build_carleman(const QuadODE& ode, int N) {
  if (N < 1) throw std::invalid_argument("truncation level must be >= 1");
  CarlemanSystem sys;
  sys.n_x = ode.n_x;
  sys.N = N;
  sys.ode = ode;
  sys.has_forcing = !ode.forcing_is_zero();

  const LiftLayout compact = LiftLayout::make_compact(ode.n_x, N);
  sys.N_c = compact.lifted_dim();
  check_size_cap(sys.N_c * sys.N_c, "Carleman generator");

  std::vector<Triplet> stat;
  std::vector<Triplet> diag_only;
  for (int i = 1; i <= N; ++i) {
    const Index row0 = compact.block_offset(i);
    add_block(stat, transfer_block(ode.F1, i, ode.n_x), row0,
              compact.block_offset(i));
    if (i + 1 <= N) {
      add_block(stat, transfer_block(ode.F2, i, ode.n_x), row0,
                compact.block_offset(i + 1));
    }
    if (ode.param_split) {
      add_block(diag_only, transfer_block(ode.param_split->F1_base, i, ode.n_x),
                row0, compact.block_offset(i));
    }
  }
  sys.A_static.resize(sys.N_c, sys.N_c);
  sys.A_static.setFromTriplets(stat.begin(), stat.end());

  sys.w0.resize(sys.N_c);
  Index pos = 0;
  for (int i = 1; i <= N; ++i) {
    sys.w0.segment(pos, compact.block_size(i)) = kron_power(ode.u0, i);
    pos += compact.block_size(i);
  }

  if (ode.param_split) {
    CarlemanSystem::Split split;
    split.A2.resize(sys.N_c, sys.N_c);
    split.A2.setFromTriplets(diag_only.begin(), diag_only.end());
    split.A1 = sys.matrix_at(0.0) - ode.param_split->nu * split.A2;
    split.A1.prune(0.0);
    sys.split = std::move(split);
  }
  return sys;
}

SparseMatrix CarlemanSystem::matrix_at(double t) const {
  if (!has_forcing) return A_static;
  const LiftLayout compact = LiftLayout::make_compact(n_x, N);
  const SparseMatrix f0 = forcing_as_matrix(ode.F0(t));
  std::vector<Triplet> extra;
  for (int i = 2; i <= N; ++i) {
    add_block(extra, transfer_block(f0, i, n_x), compact.block_offset(i),
              compact.block_offset(i - 1));
  }
  SparseMatrix sub(N_c, N_c);
  sub.setFromTriplets(extra.begin(), extra.end());
  return A_static + sub;
}

Vector CarlemanSystem::b_at(double t) const {
  Vector b = Vector::Zero(N_c);
  b.head(n_x) = ode.F0(t);
  return b;
}

double lifted_block_residual(const QuadODE& ode, int N, int block,
                             const Vector& u, double t) {
  if (block < 1 || block > N) {
    throw std::invalid_argument("block index out of range");
  }
  const Index n = ode.n_x;
  if (u.size() != n) throw std::invalid_argument("state length mismatch");
  const Vector du = eval_rhs(ode, t, u);

  // d/dt u^[i] via the product rule.
  Vector ddt = Vector::Zero(ipow(n, block));
  for (int p = 1; p <= block; ++p) {
    Vector term = Vector::Ones(1);
    for (int q = 1; q <= block; ++q) {
      const Vector& factor = (q == p) ? du : u;
      Vector next(term.size() * n);
      for (Index a = 0; a < term.size(); ++a) {
        next.segment(a * n, n) = term[a] * factor;
      }
      term.swap(next);
    }
    ddt += term;
  }

  Vector rhs = transfer_block(ode.F1, block, n) * kron_power(u, block);
  if (block + 1 <= N) {
    rhs += transfer_block(ode.F2, block, n) * kron_power(u, block + 1);
  }
  if (block - 1 >= 1) {
    rhs += transfer_block(forcing_as_matrix(ode.F0(t)), block, n) *
           kron_power(u, block - 1);
  } else {
    rhs += ode.F0(t);
  }
  return (ddt - rhs).norm();
}

double lifted_rhs_residual(const QuadODE& ode, int N, const Vector& u,
                           double t) {
  double max_res = 0.0;
  for (int i = 1; i <= N - 1; ++i) {
    max_res = std::max(max_res, lifted_block_residual(ode, N, i, u, t));
  }
  return max_res;
}

}  // namespace nbvqpco
