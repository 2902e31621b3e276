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

#include "nbvqpco/kron.hpp"

#include <vector>

namespace nbvqpco {

Vector kron_power(const Vector& x, int i) {
  if (i < 0) throw std::invalid_argument("kron_power order must be >= 0");
  const Index n = x.size();
  Index len = 1;
  for (int k = 0; k < i; ++k) {
    check_size_cap(len * n, "kron_power");
    len *= n;
  }
  Vector out = Vector::Ones(1);
  for (int k = 0; k < i; ++k) {
    Vector next(out.size() * n);
    for (Index a = 0; a < out.size(); ++a) {
      next.segment(a * n, n) = out[a] * x;
    }
    out.swap(next);
  }
  return out;
}

SparseMatrix kron_sparse(const SparseMatrix& a, const SparseMatrix& b) {
  check_size_cap(static_cast<Index>(a.nonZeros()) * b.nonZeros(),
                 "kron_sparse");
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros()) *
                   static_cast<std::size_t>(b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          triplets.emplace_back(ia.row() * b.rows() + ib.row(),
                                ia.col() * b.cols() + ib.col(),
                                ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SparseMatrix sparse_identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

}  // namespace nbvqpco
