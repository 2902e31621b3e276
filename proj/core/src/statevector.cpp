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

#include "nbvqpco/statevector.hpp"

#include <cmath>

#include "nbvqpco/kron.hpp"

namespace nbvqpco {

Vector StateVector::real_amplitudes(double tol) const {
  for (Index i = 0; i < amplitudes.size(); ++i) {
    if (std::abs(amplitudes[i].imag()) > tol) {
      throw std::runtime_error("state has non-negligible imaginary parts");
    }
  }
  return amplitudes.real();
}

StateVector StateVector::from_real(const Vector& v) {
  StateVector out;
  out.n_qubits = log2_exact(v.size());
  out.amplitudes = v.cast<std::complex<double>>();
  return out;
}

StateVector StateVector::from_complex(ComplexVector v) {
  StateVector out;
  out.n_qubits = log2_exact(v.size());
  out.amplitudes = std::move(v);
  return out;
}

StateVector prepare_w0_state(const Vector& u0, int N) {
  if (std::abs(u0.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("initial state must have unit norm");
  }
  const LiftLayout layout = LiftLayout::make_padded(u0.size(), N);
  Vector amps = Vector::Zero(layout.register_size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (int i = 1; i <= N; ++i) {
    amps.segment(layout.block_offset(i), layout.block_size(i)) =
        scale * kron_power(u0, i);
  }
  return StateVector::from_real(amps);
}

StateVector prepare_b_state(const BlockLinearSystem& sys) {
  if (!sys.layout.padded) {
    throw std::invalid_argument("state preparation needs the padded layout");
  }
  const Index q = sys.step_stride();
  const double tail = sys.b_tilde.tail(sys.dim() - q).norm();
  if (tail != 0.0) {
    throw std::invalid_argument(
        "state preparation covers zero forcing only; pass the raw normalized "
        "right-hand side instead");
  }
  const double norm = sys.b_tilde.norm();
  if (norm == 0.0) throw std::invalid_argument("right-hand side vanishes");
  return StateVector::from_real(sys.b_tilde / norm);
}

double trace_distance(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("trace distance needs nonzero states");
  }
  const double overlap = a.dot(b) / (na * nb);
  const double inside = 1.0 - overlap * overlap;
  return std::sqrt(std::max(0.0, inside));
}

double trace_distance(const StateVector& a, const StateVector& b) {
  const std::complex<double> overlap =
      (a.amplitudes.adjoint() * b.amplitudes)(0) / (a.norm() * b.norm());
  const double inside = 1.0 - std::norm(overlap);
  return std::sqrt(std::max(0.0, inside));
}

}  // namespace nbvqpco
