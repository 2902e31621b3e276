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

#include "nbvqpco/carleman.hpp"
#include "nbvqpco/types.hpp"

namespace nbvqpco {

enum class Scheme { kForward, kBackward };

/// One assembled linear system covering all time steps of the Euler
/// iteration. Block row k = 0 pins the initial condition; block row k >= 1 is
/// the step from k-1 to k. Both schemes are block lower bidiagonal:
///
///   forward:  diagonal I,             sub-diagonal -[I + A_N((k-1)h) h]
///   backward: diagonal I - A_N((k-1)h) h,  sub-diagonal -I
///
/// In the padded layout the lifted operator carries zeros on padding, so
/// diagonal blocks stay identity there and the system remains invertible;
/// padded slots of the solution vanish whenever the padded right-hand side
/// entries do.
struct BlockLinearSystem {
  LiftLayout layout;
  Scheme scheme = Scheme::kBackward;
  double h = 0.0;
  Index M = 0;  // number of steps; n_t = M + 1 block rows
  bool constant_blocks = true;  // false when A_N(t) varies over the grid

  SparseMatrix A_tilde;
  Vector b_tilde;

  /// A_tilde = A1 + nu * A2, present when the Carleman system carried a
  /// parameter split.
  struct Split {
    SparseMatrix A1;
    SparseMatrix A2;
    double nu = 0.0;
  };
  std::optional<Split> split;

  /// Register-level generator split A_N = A_N1 + nu A_N2 (one time step,
  /// embedded per `layout`), kept for the tensor decomposition path.
  struct LiftSplit {
    SparseMatrix A_N1;
    SparseMatrix A_N2;
  };
  std::optional<LiftSplit> lift_split;

  Index dim() const { return A_tilde.rows(); }
  Index n_t() const { return M + 1; }
  Index step_stride() const { return layout.register_size(); }

  /// Register position of entry `k` of lifted block `block` at time step
  /// `step`.
  Index position(Index step, int block, Index k) const {
    return step * step_stride() + layout.block_offset(block) + k;
  }

  /// Per-time-step slice of a full-length vector.
  Vector step_slice(const Vector& w, Index step) const {
    return w.segment(step * step_stride(), step_stride());
  }
};

/// Time-discretizes the truncated system over horizon T with n_t grid points
/// (M = n_t - 1 steps of size h = T/M). With `padded` true the lifted
/// register is zero-padded to 2^(sN+1) slots and n_t must be a power of two.
BlockLinearSystem assemble(const CarlemanSystem& sys, double T, Index n_t,
                           Scheme scheme, bool padded = true);

/// Same system re-assembled at a different parameter through the split.
SparseMatrix system_matrix_at(const BlockLinearSystem& sys, double nu);

struct DirectSolution {
  Vector w;             // stacked solution, register layout
  Vector w_normalized;  // w / ||w||
};

/// Exact classical solve by block forward substitution; the backward scheme
/// factors the (constant) diagonal block once. Reports the offending time
/// step if a diagonal block is singular.
DirectSolution solve_direct(const BlockLinearSystem& sys);

/// Spectral-norm condition number via dense SVD. Guarded by the size cap;
/// intended for desk-scale systems only.
double condition_number(const BlockLinearSystem& sys);
double condition_number(const SparseMatrix& m);

/// Spectral norm via dense SVD (same caveats as condition_number).
double spectral_norm(const SparseMatrix& m);

}  // namespace nbvqpco
