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

#include <vector>

#include "nbvqpco/statevector.hpp"
#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// Layered hardware-efficient ansatz over real gates: repetitions of a full
/// column of Y rotations (most significant wire first) and a ring of CNOT
/// entanglers between adjacent wires, closed by a final rotation column.
/// All gates are real, so V(theta)|0...0> is a real state.
///
/// The entangler choice matters more than it looks: with CZ (or CZ plus
/// Hadamard columns) the generated orbit of |0...0> collapses to an
/// O(n_qubits^2)-dimensional manifold independent of depth, which caps the
/// reachable solution quality. CNOT rings do not collapse.
struct Ansatz {
  int n_qubits = 0;
  int n_layers = 3;

  Index parameter_count() const {
    return static_cast<Index>(n_layers + 1) * n_qubits;
  }
};

struct Gate {
  enum class Kind { kRY, kCNOT };
  Kind kind;
  int a = 0;          // target wire (RY) or control wire (CNOT)
  int b = 0;          // target wire (CNOT)
  Index param = -1;   // index into theta for RY gates
};

/// Gate sequence of the ansatz in application order.
std::vector<Gate> ansatz_gates(const Ansatz& ansatz);

/// In-place gate application on a real statevector; wire 0 is the most
/// significant qubit.
void apply_ry(Vector& state, int n_qubits, int wire, double theta);
void apply_ry_derivative(Vector& state, int n_qubits, int wire, double theta);
void apply_cnot(Vector& state, int n_qubits, int control, int target);

/// V(theta)|0...0> as a real vector.
Vector apply_ansatz_real(const Ansatz& ansatz, const Vector& theta);

/// Same state wrapped as a StateVector.
StateVector apply_ansatz(const Ansatz& ansatz, const Vector& theta);

}  // namespace nbvqpco
