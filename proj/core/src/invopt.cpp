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

#include "nbvqpco/invopt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "nbvqpco/carleman.hpp"
#include "nbvqpco/kron.hpp"
#include "nbvqpco/rng.hpp"
#include "nbvqpco/sigma.hpp"
#include "nbvqpco/statevector.hpp"

namespace nbvqpco {

SelectorMatrices build_selectors(const BlockLinearSystem& sys,
                                 const DesignCostSpec& spec) {
  const Index n_x = sys.layout.n_x;
  if (spec.H.rows() != n_x || spec.H.cols() != n_x ||
      spec.h_vec.size() != n_x) {
    throw std::invalid_argument("design cost spec does not match n_x");
  }
  SelectorMatrices sel;
  sel.n_x = n_x;
  sel.n_steps = sys.n_t();
  const Index dim = sys.dim();

  std::vector<Triplet> k0;
  for (Index j = 0; j < n_x; ++j) {
    k0.emplace_back(j, sys.position(0, 1, j), 1.0);
  }
  sel.K0.resize(n_x, dim);
  sel.K0.setFromTriplets(k0.begin(), k0.end());

  std::vector<Triplet> kf;
  for (Index k = 0; k < sel.n_steps; ++k) {
    for (Index j = 0; j < n_x; ++j) {
      kf.emplace_back(k * n_x + j, sys.position(k, 1, j), 1.0);
    }
  }
  sel.Kf.resize(sel.n_steps * n_x, dim);
  sel.Kf.setFromTriplets(kf.begin(), kf.end());

  const SparseMatrix h_sparse = spec.H.sparseView();
  const SparseMatrix i_steps = sparse_identity(sel.n_steps);
  const SparseMatrix block_h = kron_sparse(i_steps, h_sparse);
  sel.Phi_f = SparseMatrix(sel.Kf.transpose()) * block_h * sel.Kf;
  sel.Phi_0 = SparseMatrix(sel.K0.transpose()) * sel.K0;

  Vector ones_h(sel.n_steps * n_x);
  for (Index k = 0; k < sel.n_steps; ++k) {
    ones_h.segment(k * n_x, n_x) = spec.h_vec;
  }
  sel.phi_vec = SparseMatrix(sel.Kf.transpose()) * ones_h;
  return sel;
}

double general_design_cost(const Vector& normalized_state,
                           const SelectorMatrices& sel,
                           const DesignCostSpec& spec, double norm_u0,
                           double h) {
  const Vector& s = normalized_state;
  const double q0 = s.dot(sel.Phi_0 * s);
  if (q0 <= 0.0) {
    throw std::runtime_error("initial-condition block of the state vanishes");
  }
  const double qf = s.dot(sel.Phi_f * s);
  const double lin = sel.phi_vec.dot(s);
  const double value = spec.w1 * h * norm_u0 * norm_u0 * qf / q0 +
                       spec.w2 * h * norm_u0 * lin / std::sqrt(q0);
  return spec.f ? spec.f(value) : value;
}

double design_cost(const Vector& normalized_state, const SelectorMatrices& sel,
                   const InverseCostData& data, double h, double T) {
  if (data.x_p_index < 1 || data.x_p_index > sel.n_x) {
    throw std::invalid_argument("probe index outside the grid");
  }
  if (data.y.size() != sel.n_steps) {
    throw std::invalid_argument("measurement series length must be M+1");
  }
  if (data.u0_probe == 0.0) {
    throw std::invalid_argument("probe sits on a zero of the initial state");
  }
  const Index p = data.x_p_index - 1;
  Vector stacked = sel.Kf * normalized_state;
  double hs = (sel.K0 * normalized_state)(p);
  if (hs == 0.0) {
    throw std::runtime_error(
        "measurement slot of the state vanishes; normalization degenerate");
  }
  // VQLS states carry an arbitrary global sign; pin it to the model's.
  if (hs * data.u0_probe < 0.0) {
    stacked = -stacked;
    hs = -hs;
  }

  const double u0p = data.u0_probe;
  double yy = 0.0, yw = 0.0, ww = 0.0;
  for (Index k = 0; k < sel.n_steps; ++k) {
    const double w = stacked[k * sel.n_x + p];
    yy += data.y[k] * data.y[k];
    yw += data.y[k] * w;
    ww += w * w;
  }
  const double cost = yy / (u0p * u0p) -
                      2.0 * yw / (std::abs(u0p) * hs) + ww / (hs * hs);
  return h / T * cost;
}

std::vector<Vector> integrate_euler(const QuadODE& ode, double T,
                                    Index steps) {
  if (steps < 1) throw std::invalid_argument("need at least one step");
  const double h = T / static_cast<double>(steps);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  Vector u = ode.u0;
  out.push_back(u);
  for (Index k = 0; k < steps; ++k) {
    u += h * eval_rhs(ode, static_cast<double>(k) * h, u);
    out.push_back(u);
  }
  return out;
}

namespace {

// Jacobian of the quadratic right-hand side at u:
// F1 + F2 (u x I + I x u) in the row-major flattening.
Matrix rhs_jacobian(const QuadODE& ode, const Vector& u) {
  const Index n = ode.n_x;
  Matrix j = Matrix(ode.F1);
  for (int k = 0; k < ode.F2.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(ode.F2, k); it; ++it) {
      const Index a = it.col() / n;
      const Index b = it.col() % n;
      j(it.row(), b) += it.value() * u[a];
      j(it.row(), a) += it.value() * u[b];
    }
  }
  return j;
}

}  // namespace

std::vector<Vector> integrate_euler_implicit(const QuadODE& ode, double T,
                                             Index steps) {
  if (steps < 1) throw std::invalid_argument("need at least one step");
  const double h = T / static_cast<double>(steps);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  Vector u = ode.u0;
  out.push_back(u);
  const Matrix id = Matrix::Identity(ode.n_x, ode.n_x);
  for (Index k = 0; k < steps; ++k) {
    const double t_next = static_cast<double>(k) * h;
    Vector next = u;  // warm start with the previous value
    for (int newton = 0; newton < 50; ++newton) {
      const Vector g = next - u - h * eval_rhs(ode, t_next, next);
      const Matrix j = id - h * rhs_jacobian(ode, next);
      const Vector delta = j.partialPivLu().solve(g);
      next -= delta;
      if (delta.norm() < 1e-14) break;
    }
    u = next;
    out.push_back(u);
  }
  return out;
}

Vector simulate_measurements(const BurgersConfig& cfg, double nu_true,
                             Scheme scheme) {
  BurgersConfig truth = cfg;
  truth.nu = nu_true;
  const QuadODE ode = discretize_burgers(truth);
  const auto traj = scheme == Scheme::kForward
                        ? integrate_euler(ode, cfg.T, cfg.n_t - 1)
                        : integrate_euler_implicit(ode, cfg.T, cfg.n_t - 1);
  Vector y(cfg.n_t);
  for (Index k = 0; k < cfg.n_t; ++k) {
    y[k] = traj[static_cast<std::size_t>(k)][cfg.x_p_index - 1];
  }
  return y;
}

double solution_error_metric(const Vector& a_normalized,
                             const Vector& b_normalized, Index n_t) {
  if (a_normalized.size() != b_normalized.size()) {
    throw std::invalid_argument("solutions differ in length");
  }
  if (n_t < 1 || a_normalized.size() % n_t != 0) {
    throw std::invalid_argument("length must split into n_t equal slices");
  }
  const Index stride = a_normalized.size() / n_t;
  double total = 0.0;
  for (Index k = 0; k < n_t; ++k) {
    total += (a_normalized.segment(k * stride, stride) -
              b_normalized.segment(k * stride, stride))
                 .norm();
  }
  return total / static_cast<double>(n_t);
}

Vector physical_series(const BlockLinearSystem& sys, const Vector& w) {
  if (w.size() != sys.dim()) {
    throw std::invalid_argument("vector does not match the system register");
  }
  const Index n_x = sys.layout.n_x;
  Vector out(sys.n_t() * n_x);
  for (Index k = 0; k <= sys.M; ++k) {
    for (Index j = 0; j < n_x; ++j) {
      out[k * n_x + j] = w[sys.position(k, 1, j)];
    }
  }
  return out;
}

namespace {

struct Pipeline {
  BlockLinearSystem base;
  SelectorMatrices selectors;
  InverseCostData data;
  Vector b_state;
  std::optional<PipelineDecomposition> sigma;  // VQLS path only
  double T = 0.0;
};

GridPoint evaluate_point(const Pipeline& pipe, const InverseProblem& prob,
                         double nu, std::uint64_t seed) {
  GridPoint point;
  point.nu = nu;
  try {
    const double h = pipe.base.h;
    BlockLinearSystem at_nu = pipe.base;
    at_nu.A_tilde = system_matrix_at(pipe.base, nu);
    const DirectSolution classical = solve_direct(at_nu);

    Vector state;
    if (prob.inner == InnerSolver::kVqls) {
      const SigmaDecomposition terms = pipe.sigma->at_parameter(nu);
      VqlsProblem vp = VqlsProblem::make(std::make_shared<SigmaMap>(terms),
                                         pipe.b_state);
      VqlsOptions opts = prob.vqls;
      opts.seed = seed;
      const VqlsRun run =
          vqls_solve(vp, Ansatz{vp.n_qubits(), prob.ansatz_layers}, opts);
      state = run.final_state.real_amplitudes();
      point.inner_cost = run.achieved_cost;
      if (prob.compute_reference_metric) {
        Vector aligned = state;
        if (classical.w_normalized.dot(aligned) < 0.0) aligned = -aligned;
        point.e_metric = solution_error_metric(
            physical_series(at_nu, classical.w_normalized),
            physical_series(at_nu, aligned), pipe.base.n_t());
        point.kappa = condition_number(at_nu.A_tilde);
      }
    } else {
      state = classical.w_normalized;
      point.inner_cost = 0.0;
    }
    point.cost = design_cost(state, pipe.selectors, pipe.data, h, pipe.T);
    point.ok = true;
  } catch (const std::exception& err) {
    point.ok = false;
    point.error = err.what();
  }
  return point;
}

Pipeline build_pipeline(const InverseProblem& prob) {
  Pipeline pipe;
  const QuadODE ode = discretize_burgers(prob.config);
  const CarlemanSystem carl = build_carleman(ode, prob.N);
  pipe.base =
      assemble(carl, prob.config.T, prob.config.n_t, prob.scheme, true);
  pipe.T = prob.config.T;

  DesignCostSpec spec;
  spec.H = Matrix::Zero(ode.n_x, ode.n_x);
  spec.H(prob.config.x_p_index - 1, prob.config.x_p_index - 1) = 1.0;
  spec.h_vec = Vector::Zero(ode.n_x);
  spec.h_vec[prob.config.x_p_index - 1] = 1.0;
  pipe.selectors = build_selectors(pipe.base, spec);

  pipe.data.y = prob.y.size() > 0
                    ? prob.y
                    : simulate_measurements(prob.config, prob.nu_true,
                                            prob.scheme);
  pipe.data.x_p_index = prob.config.x_p_index;
  pipe.data.u0_probe = ode.u0[prob.config.x_p_index - 1];

  pipe.b_state = prepare_b_state(pipe.base).real_amplitudes();
  if (prob.inner == InnerSolver::kVqls) {
    pipe.sigma = decompose_pipeline(pipe.base);
  }
  return pipe;
}

}  // namespace

InversionResult run_nbvqpco(const InverseProblem& prob, int jobs) {
  if (!(prob.nu_min < prob.nu_max)) {
    throw std::invalid_argument("nu range must satisfy nu_min < nu_max");
  }
  const Pipeline pipe = build_pipeline(prob);
  InversionResult result;

  if (prob.outer == OuterMethod::kGrid) {
    if (!(prob.grid_step > 0.0)) {
      throw std::invalid_argument("grid step must be positive");
    }
    std::vector<double> grid;
    for (double nu = prob.nu_min; nu <= prob.nu_max + 1e-12;
         nu += prob.grid_step) {
      grid.push_back(nu);
    }
    if (grid.empty()) throw std::invalid_argument("empty parameter grid");

    result.curve.resize(grid.size());
    const int workers =
        std::max(1, std::min<int>(jobs, static_cast<int>(grid.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= grid.size()) break;
        result.curve[i] = evaluate_point(
            pipe, prob, grid[i],
            Rng::derive_seed(prob.vqls.seed, static_cast<std::uint64_t>(i)));
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    result.evaluations = static_cast<Index>(grid.size());
  } else {
    std::vector<GridPoint> seen;
    Index evals = 0;
    auto objective = [&](const Vector& x) {
      const double nu = x[0];
      GridPoint point = evaluate_point(
          pipe, prob, nu,
          Rng::derive_seed(prob.vqls.seed, static_cast<std::uint64_t>(evals)));
      ++evals;
      seen.push_back(point);
      return point.ok ? point.cost : std::numeric_limits<double>::infinity();
    };
    Vector lo(1), hi(1), start(1);
    lo[0] = prob.nu_min;
    hi[0] = prob.nu_max;
    start[0] = 0.5 * (prob.nu_min + prob.nu_max);
    nelder_mead(objective, lo, hi, start, 60, 1e-4);
    result.curve = std::move(seen);
    std::sort(result.curve.begin(), result.curve.end(),
              [](const GridPoint& a, const GridPoint& b) {
                return a.nu < b.nu;
              });
    result.evaluations = evals;
  }

  for (const GridPoint& p : result.curve) {
    if (p.ok && p.cost < result.cost_star) {
      result.cost_star = p.cost;
      result.nu_star = p.nu;
    }
  }
  return result;
}

Vector nelder_mead(const std::function<double(const Vector&)>& fn,
                   const Vector& lo, const Vector& hi, const Vector& start,
                   Index max_evals, double tol) {
  const Index n = start.size();
  auto clamp = [&](Vector x) {
    for (Index i = 0; i < n; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
  };

  std::vector<Vector> pts;
  std::vector<double> vals;
  Index evals = 0;
  auto eval = [&](const Vector& x) {
    ++evals;
    return fn(clamp(x));
  };

  pts.push_back(clamp(start));
  vals.push_back(eval(pts[0]));
  for (Index i = 0; i < n; ++i) {
    Vector x = pts[0];
    const double span = 0.25 * (hi[i] - lo[i]);
    x[i] = (x[i] + span <= hi[i]) ? x[i] + span : x[i] - span;
    pts.push_back(clamp(x));
    vals.push_back(eval(pts.back()));
  }

  auto order = [&]() {
    std::vector<Index> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Index>(i);
    std::sort(idx.begin(), idx.end(),
              [&](Index a, Index b) { return vals[a] < vals[b]; });
    std::vector<Vector> p2;
    std::vector<double> v2;
    for (Index i : idx) {
      p2.push_back(pts[static_cast<std::size_t>(i)]);
      v2.push_back(vals[static_cast<std::size_t>(i)]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  while (evals < max_evals) {
    order();
    if ((pts.front() - pts.back()).norm() < tol) break;
    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) centroid += pts[i];
    centroid /= static_cast<double>(pts.size() - 1);

    const Vector reflected = clamp(centroid + (centroid - pts.back()));
    const double fr = eval(reflected);
    if (fr < vals.front()) {
      const Vector expanded = clamp(centroid + 2.0 * (centroid - pts.back()));
      const double fe = eval(expanded);
      if (fe < fr) {
        pts.back() = expanded;
        vals.back() = fe;
      } else {
        pts.back() = reflected;
        vals.back() = fr;
      }
    } else if (fr < vals[vals.size() - 2]) {
      pts.back() = reflected;
      vals.back() = fr;
    } else {
      const Vector contracted =
          clamp(centroid + 0.5 * (pts.back() - centroid));
      const double fc = eval(contracted);
      if (fc < vals.back()) {
        pts.back() = contracted;
        vals.back() = fc;
      } else {
        for (std::size_t i = 1; i < pts.size(); ++i) {
          pts[i] = clamp(pts.front() + 0.5 * (pts[i] - pts.front()));
          vals[i] = eval(pts[i]);
        }
      }
    }
  }
  order();
  return pts.front();
}

}  // namespace nbvqpco
