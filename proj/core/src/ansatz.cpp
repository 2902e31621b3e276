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

#include "nbvqpco/ansatz.hpp"

#include <cmath>

namespace nbvqpco {

std::vector<Gate> ansatz_gates(const Ansatz& ansatz) {
  if (ansatz.n_qubits < 1 || ansatz.n_layers < 1) {
    throw std::invalid_argument("ansatz needs at least one qubit and layer");
  }
  std::vector<Gate> gates;
  Index param = 0;
  for (int layer = 0; layer < ansatz.n_layers; ++layer) {
    for (int w = 0; w < ansatz.n_qubits; ++w) {
      gates.push_back({Gate::Kind::kRY, w, 0, param++});
    }
    for (int w = 0; w + 1 < ansatz.n_qubits; ++w) {
      gates.push_back({Gate::Kind::kCNOT, w, w + 1, -1});
    }
    if (ansatz.n_qubits >= 3) {
      gates.push_back({Gate::Kind::kCNOT, ansatz.n_qubits - 1, 0, -1});
    }
  }
  for (int w = 0; w < ansatz.n_qubits; ++w) {
    gates.push_back({Gate::Kind::kRY, w, 0, param++});
  }
  return gates;
}

namespace {

inline Index wire_bit(int n_qubits, int wire) {
  return Index{1} << (n_qubits - 1 - wire);
}

void apply_ry_matrix(Vector& state, int n_qubits, int wire, double m00,
                     double m01, double m10, double m11) {
  const Index bit = wire_bit(n_qubits, wire);
  const Index dim = state.size();
  for (Index base = 0; base < dim; ++base) {
    if (base & bit) continue;
    const double a0 = state[base];
    const double a1 = state[base | bit];
    state[base] = m00 * a0 + m01 * a1;
    state[base | bit] = m10 * a0 + m11 * a1;
  }
}

}  // namespace

void apply_ry(Vector& state, int n_qubits, int wire, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  apply_ry_matrix(state, n_qubits, wire, c, -s, s, c);
}

void apply_ry_derivative(Vector& state, int n_qubits, int wire, double theta) {
  const double c = 0.5 * std::cos(theta / 2.0);
  const double s = 0.5 * std::sin(theta / 2.0);
  apply_ry_matrix(state, n_qubits, wire, -s, -c, c, -s);
}

void apply_cnot(Vector& state, int n_qubits, int control, int target) {
  const Index cbit = wire_bit(n_qubits, control);
  const Index tbit = wire_bit(n_qubits, target);
  const Index dim = state.size();
  for (Index i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(state[i], state[i | tbit]);
    }
  }
}

Vector apply_ansatz_real(const Ansatz& ansatz, const Vector& theta) {
  if (theta.size() != ansatz.parameter_count()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  Vector state = Vector::Zero(Index{1} << ansatz.n_qubits);
  state[0] = 1.0;
  for (const Gate& g : ansatz_gates(ansatz)) {
    if (g.kind == Gate::Kind::kRY) {
      apply_ry(state, ansatz.n_qubits, g.a, theta[g.param]);
    } else {
      apply_cnot(state, ansatz.n_qubits, g.a, g.b);
    }
  }
  return state;
}

StateVector apply_ansatz(const Ansatz& ansatz, const Vector& theta) {
  return StateVector::from_real(apply_ansatz_real(ansatz, theta));
}

}  // namespace nbvqpco
