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

#include <functional>
#include <string>
#include <vector>

#include "nbvqpco/bounds.hpp"
#include "nbvqpco/linsys.hpp"
#include "nbvqpco/polyode.hpp"
#include "nbvqpco/vqls.hpp"

namespace nbvqpco {

/// Quadratic design objective f(w1 <u,Hu>_T + w2 <u,h>_T, p).
struct DesignCostSpec {
  double w1 = 1.0;
  double w2 = 0.0;
  Matrix H;      // n_x x n_x, symmetric in shipped instances
  Vector h_vec;  // n_x
  std::function<double(double)> f;  // outer map; identity when null
};

/// Selection matrices extracting the physical block from the stacked
/// register solution, plus the quadratic forms of the reformulated cost.
struct SelectorMatrices {
  SparseMatrix K0;     // u0 block of time step 0
  SparseMatrix Kf;     // physical blocks of all time steps, stacked
  SparseMatrix Phi_f;  // Kf^T (I_{M+1} x H) Kf
  SparseMatrix Phi_0;  // K0^T K0
  Vector phi_vec;      // Kf^T (1_{M+1} x h)
  Index n_x = 0;
  Index n_steps = 0;  // M + 1
};

SelectorMatrices build_selectors(const BlockLinearSystem& sys,
                                 const DesignCostSpec& spec);

/// Riemann-sum design cost evaluated on a normalized register state:
/// f(w1 h ||u0||^2 Qf/Q0 + w2 h ||u0|| <phi,s>/sqrt(Q0)). Exactly invariant
/// under rescaling of the unnormalized solution.
double general_design_cost(const Vector& normalized_state,
                           const SelectorMatrices& sel,
                           const DesignCostSpec& spec, double norm_u0,
                           double h);

/// Probe-point measurement data of the inverse problem.
struct InverseCostData {
  Vector y;            // measured series y(kh), k = 0..M
  Index x_p_index = 1; // 1-based grid index of the probe
  double u0_probe = 0.0;  // model value u0(x_p)
};

/// Normalization-free misfit (h/T)(<y,y>/u0p^2 - 2<y, S s>/(|u0p| <hs, s>)
/// + <S s, S s>/<hs, s>^2) with S the probe rows of Kf and hs the probe row
/// of K0. The state's global sign is fixed to the model sign of u0(x_p);
/// a vanishing measurement slot <hs, s> is reported as degenerate.
double design_cost(const Vector& normalized_state, const SelectorMatrices& sel,
                   const InverseCostData& data, double h, double T);

/// Forward nonlinear Euler iterate u^{k+1} = u^k + h F(kh, u^k).
std::vector<Vector> integrate_euler(const QuadODE& ode, double T, Index steps);

/// Implicit nonlinear Euler iterate solved per step by Newton's method.
std::vector<Vector> integrate_euler_implicit(const QuadODE& ode, double T,
                                             Index steps);

/// Synthetic probe-point series at the pipeline grid. The stepping scheme
/// matches the inner solve by default: measurements taken with the explicit
/// iterate against an implicit inner system displace the recovered optimum
/// by several grid steps at the shipped (coarse) resolution.
Vector simulate_measurements(const BurgersConfig& cfg, double nu_true,
                             Scheme scheme = Scheme::kBackward);

/// Time-averaged per-step distance (1/n_t) sum_i ||a_i - b_i|| between two
/// normalized stacked solutions.
double solution_error_metric(const Vector& a_normalized,
                             const Vector& b_normalized, Index n_t);

/// Physical solution components of a stacked register vector: block one of
/// every time step, time-major. These are the sub-vectors the solution
/// error metric compares in the shipped pipeline.
Vector physical_series(const BlockLinearSystem& sys, const Vector& w);

enum class InnerSolver { kClassical, kVqls };
enum class OuterMethod { kGrid, kNelderMead };

struct InverseProblem {
  BurgersConfig config;
  Vector y;  // measurements, length n_t; empty to synthesize from nu_true
  double nu_true = 0.07;
  double nu_min = 0.01;
  double nu_max = 0.15;
  double grid_step = 0.01;
  int N = 1;
  int ansatz_layers = 3;
  Scheme scheme = Scheme::kBackward;
  InnerSolver inner = InnerSolver::kClassical;
  OuterMethod outer = OuterMethod::kGrid;
  VqlsOptions vqls;
  bool compute_reference_metric = true;  // fill E when running VQLS
};

struct GridPoint {
  double nu = 0.0;
  double cost = std::numeric_limits<double>::quiet_NaN();
  double inner_cost = std::numeric_limits<double>::quiet_NaN();
  double e_metric = std::numeric_limits<double>::quiet_NaN();
  double kappa = std::numeric_limits<double>::quiet_NaN();
  bool ok = false;
  std::string error;
};

struct InversionResult {
  double nu_star = std::numeric_limits<double>::quiet_NaN();
  double cost_star = std::numeric_limits<double>::infinity();
  std::vector<GridPoint> curve;  // sorted by nu
  Index evaluations = 0;
};

/// Outer search over nu with the split system assembled once; each candidate
/// re-weights the precomputed parameter-dependent parts. Grid points are
/// independent and may be evaluated on `jobs` threads; failures are recorded
/// per point. Nelder-Mead (one-dimensional simplex on nu) is available
/// behind the same interface.
InversionResult run_nbvqpco(const InverseProblem& problem, int jobs = 1);

/// Derivative-free simplex minimizer on a box, used by the kNelderMead
/// outer method and exposed for vector-valued parameters.
Vector nelder_mead(const std::function<double(const Vector&)>& fn,
                   const Vector& lo, const Vector& hi, const Vector& start,
                   Index max_evals, double tol);

}  // namespace nbvqpco
