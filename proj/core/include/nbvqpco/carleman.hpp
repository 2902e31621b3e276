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

#include <optional>

#include "nbvqpco/polyode.hpp"
#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// Placement of the lifted blocks w_1, ..., w_N inside one register.
///
/// The compact layout packs the blocks back to back (dimension N_c). The
/// padded layout places block i at offset n_x^i inside a register of
/// 2^(sN+1) slots with n_x = 2^s, so every block starts on a boundary
/// aligned to its own size. Aligned starts keep the tensor-product
/// decomposition of block-structured operators free of extra terms, and they
/// are what a rotation-ladder state-preparation circuit naturally produces:
/// the marker basis state of block i is the single bit 2^(s i).
struct LiftLayout {
  Index n_x = 0;
  int N = 1;
  bool padded = true;

  static LiftLayout make_padded(Index n_x, int N);
  static LiftLayout make_compact(Index n_x, int N);

  Index block_size(int i) const;    // n_x^i, i in [1, N]
  Index block_offset(int i) const;  // start of block i in the register
  Index lifted_dim() const;         // N_c = sum of block sizes
  Index register_size() const;      // N_c (compact) or 2^(sN+1) (padded)
  int qubits() const;               // padded only

  /// 0/1 selection matrix P (register_size x N_c) with P w_compact placing
  /// each block at its register offset.
  SparseMatrix embedding() const;

  SparseMatrix embed_matrix(const SparseMatrix& compact) const;
  Vector embed_vector(const Vector& compact) const;
};

/// Identity-padded slot sum A^i_{i+j-1} = sum_p I x..x F_j x..x I with F_j in
/// slot p of i factors. F_j must have n_x rows and n_x^j columns for some
/// j in {0, 1, 2}.
SparseMatrix transfer_block(const SparseMatrix& F_j, int i, Index n_x);

/// Truncated lift of a quadratic ODE: block-tridiagonal generator acting on
/// (u, u^[2], ..., u^[N]) stacked compactly.
struct CarlemanSystem {
  Index n_x = 0;
  int N = 1;
  Index N_c = 0;
  QuadODE ode;

  /// Time-independent part: F1 diagonal blocks and F2 super-diagonal blocks.
  SparseMatrix A_static;
  /// True when F0 is not identically zero; the sub-diagonal forcing blocks
  /// then enter through matrix_at(t).
  bool has_forcing = false;

  /// A_N(t); equal to A_static whenever the forcing vanishes.
  SparseMatrix matrix_at(double t) const;
  /// Forcing vector b(t) = (F0(t), 0, ..., 0), compact.
  Vector b_at(double t) const;

  Vector w0;  // (u0, u0^[2], ..., u0^[N]) compact

  /// A_N = A1 + nu * A2 with A2 the diagonal blocks built from the base
  /// operator of the parameter split and A1 the off-diagonal rest
  /// (evaluated at t = 0 when forcing is present).
  struct Split {
    SparseMatrix A1;
    SparseMatrix A2;
  };
  std::optional<Split> split;
};

/// Builds the order-N truncation. N >= 1; throws SizeCapError when N_c
/// exceeds the size cap.
CarlemanSystem build_carleman(const QuadODE& ode, int N);

/// Residual of the lift identity for one block:
/// || d/dt u^[i] - sum_j A^i_{i+j-1} u^[i+j-1] || with the time derivative
/// expanded by the product rule. Exactly zero for i < N; block N generally
/// picks up the dropped coupling to u^[N+1].
double lifted_block_residual(const QuadODE& ode, int N, int block,
                             const Vector& u, double t = 0.0);

/// Max of lifted_block_residual over blocks i = 1..N-1 (0 when N == 1).
double lifted_rhs_residual(const QuadODE& ode, int N, const Vector& u,
                           double t = 0.0);

}  // namespace nbvqpco
