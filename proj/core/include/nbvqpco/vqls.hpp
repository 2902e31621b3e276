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

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "nbvqpco/ansatz.hpp"
#include "nbvqpco/sigma.hpp"
#include "nbvqpco/statevector.hpp"
#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// Real linear operator abstraction so the solver can run against a sparse
/// matrix or directly against a tensor-product decomposition (which
/// exercises the decomposition end to end).
class LinearMap {
 public:
  virtual ~LinearMap() = default;
  virtual Index dim() const = 0;
  virtual Vector apply(const Vector& x) const = 0;
  virtual Vector apply_transpose(const Vector& x) const = 0;
};

class SparseMap final : public LinearMap {
 public:
  explicit SparseMap(SparseMatrix m)
      : m_(std::move(m)), mt_(m_.transpose()) {}
  Index dim() const override { return m_.rows(); }
  Vector apply(const Vector& x) const override { return m_ * x; }
  Vector apply_transpose(const Vector& x) const override { return mt_ * x; }

 private:
  SparseMatrix m_;
  SparseMatrix mt_;
};

class SigmaMap final : public LinearMap {
 public:
  explicit SigmaMap(SigmaDecomposition d) : d_(std::move(d)) {}
  Index dim() const override { return d_.dim(); }
  Vector apply(const Vector& x) const override { return d_.apply(x); }
  Vector apply_transpose(const Vector& x) const override {
    return d_.apply_transpose(x);
  }
  const SigmaDecomposition& decomposition() const { return d_; }

 private:
  SigmaDecomposition d_;
};

enum class CostKind { kGlobal, kLocal };

/// Linear-system instance A |psi> ~ |b>. The preparation unitary behind the
/// local cost is the canonical binary-tree amplitude encoder carrying
/// |0...0> to the b state (one multiplexed Y rotation per qubit level).
// The normalized global cost is the shipped default: in exact statevector
// simulation the local cost paired with a generic completion of U_b develops
// flat suboptimal basins at C_l = 1/n (the optimizer parks on states whose
// image has zero overlap with b), while the global cost converges from every
// tested start at these register sizes.
struct VqlsProblem {
  std::shared_ptr<const LinearMap> A;
  Vector b_state;  // normalized right-hand state
  CostKind cost_kind = CostKind::kGlobal;
  bool normalized = true;

  int n_qubits() const { return log2_exact(A->dim()); }

  static VqlsProblem make(std::shared_ptr<const LinearMap> A, Vector b_state,
                          CostKind kind = CostKind::kGlobal,
                          bool normalized = true);
};

/// All four cost values of one trial state.
struct CostBreakdown {
  double ug = 0.0;  // <phi|(I - |b><b|)|phi>,      phi = A psi
  double g = 0.0;   // 1 - |<b|phi>|^2 / <phi|phi>
  double ul = 0.0;  // <phi| U_b (I - 1/n sum P_k) U_b^T |phi>
  double l = 0.0;   // ul / <phi|phi>
  double phi_norm2 = 0.0;
};

CostBreakdown cost_breakdown(const VqlsProblem& problem, const Vector& psi);

/// Selected cost of the problem for a (complex) state.
double cost(const VqlsProblem& problem, const StateVector& state);

/// Value and exact analytic gradient of the selected cost at theta
/// (adjoint-mode differentiation of the statevector).
struct CostAndGradient {
  double value = 0.0;
  Vector gradient;
};
CostAndGradient cost_and_gradient(const VqlsProblem& problem,
                                  const Ansatz& ansatz, const Vector& theta);
Vector gradient(const VqlsProblem& problem, const Ansatz& ansatz,
                const Vector& theta);

struct VqlsOptions {
  Index max_iter = 200;
  double step = 0.8;          // Adagrad step size
  double threshold = 0.0;     // stop once cost <= threshold
  int restarts = 3;
  std::uint64_t seed = 1;
};

struct VqlsRun {
  Vector theta_star;
  std::vector<double> cost_trace;  // cost at each visited iterate (best run)
  std::vector<double> grad_norm_trace;
  StateVector final_state;
  Index iterations = 0;
  double achieved_cost = std::numeric_limits<double>::infinity();
  // Diagnostics filled by callers that hold a reference solution.
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double trace_distance_ref = std::numeric_limits<double>::quiet_NaN();
};

/// Accumulated-squared-gradient descent from Beta(1/2,1/2) initialization
/// scaled to [0, 2pi); returns the best run across restarts. Non-convergence
/// shows up in achieved_cost, never as an exception.
VqlsRun vqls_solve(const VqlsProblem& problem, const Ansatz& ansatz,
                   const VqlsOptions& opts);

}  // namespace nbvqpco
