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

#include "nbvqpco/vqls.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "nbvqpco/rng.hpp"

namespace nbvqpco {

VqlsProblem VqlsProblem::make(std::shared_ptr<const LinearMap> A,
                              Vector b_state, CostKind kind, bool normalized) {
  if (!A) throw std::invalid_argument("missing system operator");
  if (A->dim() != b_state.size()) {
    throw std::invalid_argument("operator and right-hand state disagree");
  }
  const double norm = b_state.norm();
  if (norm == 0.0) throw std::invalid_argument("right-hand state vanishes");
  VqlsProblem out;
  out.A = std::move(A);
  out.b_state = b_state / norm;
  out.cost_kind = kind;
  out.normalized = normalized;
  return out;
}

namespace {

// Preparation unitary completed as the canonical binary-tree amplitude
// encoder: one uniformly-controlled Y rotation per qubit level, with the
// angles read off the subtree norms of b. U_b|0...0> = |b>, and the circuit
// form keeps the completed columns spread over the register (a rank-one
// reflection completion leaves fixed points that trap the local cost).
struct PrepUnitary {
  int n = 0;
  // angles[k] holds the 2^k rotation angles of level k (qubit k, controls on
  // all earlier qubits).
  std::vector<std::vector<double>> angles;

  explicit PrepUnitary(const Vector& b) {
    n = log2_exact(b.size());
    angles.resize(static_cast<std::size_t>(n));
    std::vector<double> norms(static_cast<std::size_t>(b.size()));
    for (Index i = 0; i < b.size(); ++i) {
      norms[static_cast<std::size_t>(i)] = b[i];
    }
    // Collapse pairwise from the leaves, recording one angle per node.
    for (int k = n - 1; k >= 0; --k) {
      const std::size_t nodes = std::size_t{1} << k;
      angles[static_cast<std::size_t>(k)].resize(nodes);
      std::vector<double> up(nodes);
      for (std::size_t j = 0; j < nodes; ++j) {
        const double a = norms[2 * j];
        const double c = norms[2 * j + 1];
        const double r = std::hypot(a, c);
        up[j] = r;
        angles[static_cast<std::size_t>(k)][j] =
            r == 0.0 ? 0.0 : 2.0 * std::atan2(c, a);
      }
      norms.swap(up);
    }
  }

  // One multiplexed RY level: pairs (i0, i1) differing in qubit k rotate by
  // the angle selected by the more significant bits.
  void level(Vector& x, int k, double sign) const {
    const Index stride = Index{1} << (n - 1 - k);
    const auto& a = angles[static_cast<std::size_t>(k)];
    for (Index block = 0; block < (Index{1} << k); ++block) {
      const double theta = sign * a[static_cast<std::size_t>(block)];
      const double c = std::cos(theta / 2.0);
      const double s = std::sin(theta / 2.0);
      const Index base = block * 2 * stride;
      for (Index i = 0; i < stride; ++i) {
        const double x0 = x[base + i];
        const double x1 = x[base + stride + i];
        x[base + i] = c * x0 - s * x1;
        x[base + stride + i] = s * x0 + c * x1;
      }
    }
  }

  Vector apply(const Vector& x) const {
    Vector out = x;
    for (int k = 0; k < n; ++k) level(out, k, 1.0);
    return out;
  }

  Vector apply_transpose(const Vector& x) const {
    Vector out = x;
    for (int k = n - 1; k >= 0; --k) level(out, k, -1.0);
    return out;
  }
};

// sum_k ||P_k x||^2 with P_k projecting qubit k onto |0>.
double zero_projector_weight(const Vector& x) {
  double total = 0.0;
  const int n = log2_exact(x.size());
  for (Index r = 0; r < x.size(); ++r) {
    const int zeros =
        n - std::popcount(static_cast<std::uint64_t>(r));
    total += static_cast<double>(zeros) * x[r] * x[r];
  }
  return total;
}

// D = I - 1/n sum_k P_k, diagonal in the computational basis.
void apply_local_diag(Vector& x) {
  const int n = log2_exact(x.size());
  for (Index r = 0; r < x.size(); ++r) {
    const int zeros = n - std::popcount(static_cast<std::uint64_t>(r));
    x[r] *= 1.0 - static_cast<double>(zeros) / static_cast<double>(n);
  }
}

}  // namespace

CostBreakdown cost_breakdown(const VqlsProblem& problem, const Vector& psi) {
  if (psi.size() != problem.A->dim()) {
    throw std::invalid_argument("state dimension mismatch");
  }
  CostBreakdown out;
  const Vector phi = problem.A->apply(psi);
  out.phi_norm2 = phi.squaredNorm();
  if (out.phi_norm2 == 0.0) {
    throw std::runtime_error("A|psi> = 0; cost normalization degenerate");
  }
  const double overlap = problem.b_state.dot(phi);
  out.ug = out.phi_norm2 - overlap * overlap;
  out.g = 1.0 - overlap * overlap / out.phi_norm2;

  const PrepUnitary ub(problem.b_state);
  const Vector phihat = ub.apply_transpose(phi);
  const int n = problem.n_qubits();
  out.ul = out.phi_norm2 -
           zero_projector_weight(phihat) / static_cast<double>(n);
  out.l = out.ul / out.phi_norm2;
  return out;
}

double cost(const VqlsProblem& problem, const StateVector& state) {
  const Vector psi = state.real_amplitudes();
  const CostBreakdown c = cost_breakdown(problem, psi);
  if (problem.cost_kind == CostKind::kGlobal) {
    return problem.normalized ? c.g : c.ug;
  }
  return problem.normalized ? c.l : c.ul;
}

namespace {

// Quadratic form value and gradient by one reverse sweep: f = <psi|M|psi>
// with psi = V(theta)|0>, M symmetric and supplied as a matrix-vector
// product.
template <typename ApplyM>
std::pair<double, Vector> quadratic_form_gradient(
    const Ansatz& ansatz, const std::vector<Gate>& gates, const Vector& theta,
    const Vector& psi, ApplyM&& apply_m) {
  const int n = ansatz.n_qubits;
  Vector lambda = apply_m(psi);
  const double value = psi.dot(lambda);
  lambda *= 2.0;

  Vector grad = Vector::Zero(theta.size());
  Vector sigma = psi;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    if (it->kind == Gate::Kind::kCNOT) {
      apply_cnot(sigma, n, it->a, it->b);  // self-inverse
      apply_cnot(lambda, n, it->a, it->b);
      continue;
    }
    apply_ry(sigma, n, it->a, -theta[it->param]);
    Vector d = sigma;
    apply_ry_derivative(d, n, it->a, theta[it->param]);
    grad[it->param] = lambda.dot(d);
    apply_ry(lambda, n, it->a, -theta[it->param]);
  }
  return {value, std::move(grad)};
}

}  // namespace

CostAndGradient cost_and_gradient(const VqlsProblem& problem,
                                  const Ansatz& ansatz, const Vector& theta) {
  if (theta.size() != ansatz.parameter_count()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  if ((Index{1} << ansatz.n_qubits) != problem.A->dim()) {
    throw std::invalid_argument("ansatz register does not match the system");
  }
  const std::vector<Gate> gates = ansatz_gates(ansatz);
  const Vector psi = apply_ansatz_real(ansatz, theta);
  const PrepUnitary ub(problem.b_state);

  auto apply_numerator = [&](const Vector& x) {
    Vector t = problem.A->apply(x);
    if (problem.cost_kind == CostKind::kGlobal) {
      t -= problem.b_state.dot(t) * problem.b_state;
    } else {
      t = ub.apply_transpose(t);
      apply_local_diag(t);
      t = ub.apply(t);
    }
    return problem.A->apply_transpose(t);
  };

  auto [f, grad_f] =
      quadratic_form_gradient(ansatz, gates, theta, psi, apply_numerator);

  CostAndGradient out;
  if (!problem.normalized) {
    out.value = f;
    out.gradient = std::move(grad_f);
    return out;
  }

  auto apply_gram = [&](const Vector& x) {
    return problem.A->apply_transpose(problem.A->apply(x));
  };
  auto [g, grad_g] =
      quadratic_form_gradient(ansatz, gates, theta, psi, apply_gram);
  if (g == 0.0) {
    throw std::runtime_error("A|psi> = 0; cost normalization degenerate");
  }
  out.value = f / g;
  out.gradient = (grad_f * g - f * grad_g) / (g * g);
  return out;
}

Vector gradient(const VqlsProblem& problem, const Ansatz& ansatz,
                const Vector& theta) {
  return cost_and_gradient(problem, ansatz, theta).gradient;
}

VqlsRun vqls_solve(const VqlsProblem& problem, const Ansatz& ansatz,
                   const VqlsOptions& opts) {
  VqlsRun best;
  const Index n_params = ansatz.parameter_count();
  constexpr double kAdagradEps = 1e-8;

  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    Rng rng(Rng::derive_seed(opts.seed, static_cast<std::uint64_t>(restart)));
    Vector theta(n_params);
    for (Index i = 0; i < n_params; ++i) {
      theta[i] = 2.0 * std::numbers::pi * rng.beta_half_half();
    }

    Vector accum = Vector::Zero(n_params);
    std::vector<double> trace;
    std::vector<double> grad_trace;
    trace.reserve(static_cast<std::size_t>(opts.max_iter));
    Vector best_theta = theta;
    double best_cost = std::numeric_limits<double>::infinity();
    Index iters = 0;

    for (Index it = 0; it < opts.max_iter; ++it) {
      const CostAndGradient eval = cost_and_gradient(problem, ansatz, theta);
      trace.push_back(eval.value);
      grad_trace.push_back(eval.gradient.norm());
      ++iters;
      if (eval.value < best_cost) {
        best_cost = eval.value;
        best_theta = theta;
      }
      if (eval.value <= opts.threshold) break;
      accum.array() += eval.gradient.array().square();
      theta.array() -=
          opts.step * eval.gradient.array() /
          (accum.array() + kAdagradEps).sqrt();
    }
    // The last update may have improved on every visited iterate.
    const CostAndGradient fin = cost_and_gradient(problem, ansatz, theta);
    if (fin.value < best_cost) {
      best_cost = fin.value;
      best_theta = theta;
    }

    if (best_cost < best.achieved_cost) {
      best.achieved_cost = best_cost;
      best.theta_star = best_theta;
      best.cost_trace = std::move(trace);
      best.grad_norm_trace = std::move(grad_trace);
      best.iterations = iters;
    }
  }

  best.final_state = apply_ansatz(ansatz, best.theta_star);
  return best;
}

}  // namespace nbvqpco
