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

#include "nbvqpco/linsys.hpp"
#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// Pure state on n qubits; amplitudes are complex for generality although
/// the whole pipeline stays real.
struct StateVector {
  ComplexVector amplitudes;
  int n_qubits = 0;

  Index dim() const { return amplitudes.size(); }
  double norm() const { return amplitudes.norm(); }

  /// Real part; throws when any imaginary component exceeds `tol`.
  Vector real_amplitudes(double tol = 1e-12) const;

  static StateVector from_real(const Vector& v);
  static StateVector from_complex(ComplexVector v);
};

/// Lifted initial state (zero slot, u0, u0^[2], ..., u0^[N]) / sqrt(N) on
/// sN+1 qubits in the padded layout: block i starts at its marker position
/// n_x^i. Unit norm follows from ||u0^[i]|| = ||u0||^i = 1.
StateVector prepare_w0_state(const Vector& u0, int N);

/// Normalized right-hand state of an assembled system with vanishing
/// forcing: the w0 register extended by log2(n_t) leading time qubits in
/// |0>. Throws when the forcing entries of b are nonzero (the state is then
/// supplied as a raw normalized vector instead).
StateVector prepare_b_state(const BlockLinearSystem& sys);

/// Trace distance sqrt(1 - |<phi|psi>|^2) between pure states.
double trace_distance(const Vector& a, const Vector& b);
double trace_distance(const StateVector& a, const StateVector& b);

}  // namespace nbvqpco
