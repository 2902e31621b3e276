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

#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// i-fold Kronecker power of a vector, row-major flattening
/// (x ⊗ y = (x1*y1, x1*y2, ..., xn*ym)). kron_power(x, 0) is the scalar 1.
/// Throws SizeCapError when n^i exceeds the size cap.
Vector kron_power(const Vector& x, int i);

/// Sparse Kronecker product, same ordering convention as kron_power.
SparseMatrix kron_sparse(const SparseMatrix& a, const SparseMatrix& b);

/// Sparse identity of dimension n.
SparseMatrix sparse_identity(Index n);

}  // namespace nbvqpco
