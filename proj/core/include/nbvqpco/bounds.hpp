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

#include <limits>
#include <utility>
#include <vector>

#include "nbvqpco/polyode.hpp"
#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// Fixed-step classic Runge-Kutta integration, returning states at
/// steps+1 uniform samples of [0, T]. Serves as the in-library reference
/// trajectory for constants that the analysis only asserts to be bounded.
std::vector<Vector> reference_trajectory(const QuadODE& ode, double T,
                                         Index steps);

/// Operator norms and spectral data entering every bound. `traj_norms`
/// holds ||u(t)|| on a uniform grid over [0, traj_T] from a reference
/// integration; selection rules and decay-dependent constants need it.
struct SystemNorms {
  double norm_F0 = 0.0;      // max_t ||F0(t)||
  double norm_F1 = 0.0;
  double norm_F2 = 0.0;
  double norm_F0_dot = 0.0;  // max_t ||dF0/dt||
  double re_lambda1 = 0.0;   // largest real part among F1 eigenvalues
  double norm_u0 = 0.0;
  double norm_uT = std::numeric_limits<double>::quiet_NaN();

  std::vector<double> traj_norms;
  double traj_T = 0.0;

  bool dissipative() const { return re_lambda1 < 0.0; }

  /// Computes norms by dense factorizations and attaches a reference
  /// trajectory over [0, T].
  static SystemNorms compute(const QuadODE& ode, double T,
                             Index traj_steps = 4000);
};

/// R2 = (||u0|| ||F2|| + ||F0||/||u0||) / |Re lambda_1|. The convergence
/// theory needs R2 < 1; larger values are flagged by callers, never fatal.
double compute_R2(const SystemNorms& norms);

struct RescaleInfo {
  double gamma = 0.0;
  double r_plus = 0.0;
  double r_minus = 0.0;
  QuadODE ode;  // rescaled system
};

/// Rescales u -> gamma u so that ||F2'|| + ||F0'|| < |Re lambda_1| and
/// ||u'(0)|| < 1, with gamma = 1/sqrt(||u0|| r_plus). Requires R2 < 1.
/// With F2 = 0 the root degenerates; gamma then takes the midpoint of the
/// admissible interval bounded by |Re lambda_1|/||F0|| and 1/||u0||.
RescaleInfo rescale(const QuadODE& ode, const SystemNorms& norms);

/// Lift truncation error ceiling t N ||F2|| ||u0||^{N+1}.
double truncation_bound(const SystemNorms& norms, int N, double t);

struct EulerBound {
  /// Error ceiling is coef * k * h^2 after k steps of size h.
  double coef = 0.0;
  /// Step ceiling from the two-term min rule (NaN when the premises fail).
  double h_max = 0.0;

  double bound(Index k, double h) const {
    return coef * static_cast<double>(k) * h * h;
  }
};

/// Discretization error bound 3 N^2.5 k h^2 ((||F2||+||F1||+||F0||)^2 +
/// ||F0dot||) and the accompanying step ceiling.
EulerBound euler_bound_and_hmax(const SystemNorms& norms, int N);

/// Step ceiling extended by the accuracy term that also involves
/// eps' = ||w_c|| eps / 2; the trajectory profile supplies a lower bound on
/// ||w_c||.
double h_max_with_accuracy(const SystemNorms& norms, int N, double T,
                           double eps, double alpha = 2.0);

/// Constructive selection of (h, N): the smallest truncation level above
/// (1 + alpha/2)/log(1/||u0||) whose tail inequality holds with
/// delta = min(delta_1, delta_2), paired with the largest admissible step of
/// the form h = K/N^alpha rounded so that M = T/h is an integer. Guarantees
/// normalized discrete-solution error at most eps. Requires R2 < 1 and
/// ||u0|| < 1 (rescale first otherwise).
std::pair<double, int> select_h_N(const SystemNorms& norms, double T,
                                  double eps, double alpha = 2.0);

/// VQLS stopping threshold: gamma = (1 - (1 - eps^2/8)^2) /
/// (9 (M+1)^2 ln(N_c (M+1))). Stopping the local cost at gamma keeps the
/// normalized solution within eps/2 of the linear-system solution.
double vqls_threshold(double eps, Index M, Index N_c);

struct ClassicalConstants {
  double L = 0.0;       // Lipschitz constant ||F1|| + 2 ||u0|| ||F2||
  double M_ddot = 0.0;  // max ||u''|| along the reference trajectory
  double C = 0.0;       // global error constant M/(2L) (e^{LT} - 1)
  double h0 = 0.0;      // stability step ceiling
};

/// Constants of the direct explicit-Euler error bound ||u(kh) - u^k|| <= C h.
ClassicalConstants classical_constants(const QuadODE& ode,
                                       const SystemNorms& norms, double T);

struct QueryComplexityParams {
  Index n_x = 0;
  double T = 0.0;
  double eps = 0.0;
  Index sparsity = 0;
  double norm_wc = 0.0;
  double norm_uc = 0.0;
};

struct QueryComplexityReport {
  double quantum = 0.0;    // log^8.5(n_x T^4/(||w_c||^2 eps^2)) T^4/(...) log(1/eps)
  double classical = 0.0;  // s n_x T^2 / (||u_c||^2 eps^2)
};

/// Formula plug-ins for reporting only; no empirical claim is attached.
QueryComplexityReport query_complexity_estimates(
    const QueryComplexityParams& params);

/// Everything the `bounds` command reports, with premise flags instead of
/// aborts (the shipped Burgers setup itself violates R2 < 1).
struct BoundReport {
  double R2 = 0.0;
  bool re_lambda1_negative = false;
  bool r2_below_one = false;
  bool u0_below_one = false;

  double rescale_gamma = std::numeric_limits<double>::quiet_NaN();
  double r_plus = std::numeric_limits<double>::quiet_NaN();
  double r_minus = std::numeric_limits<double>::quiet_NaN();

  int N = 1;
  double T = 0.0;
  double eps = 0.0;
  Index M = 0;
  Index N_c = 0;

  double truncation_at_T = 0.0;
  double euler_coef = 0.0;
  double h_max = std::numeric_limits<double>::quiet_NaN();
  double h_max_accuracy = std::numeric_limits<double>::quiet_NaN();
  double N_min_rule = std::numeric_limits<double>::quiet_NaN();
  int selected_N = -1;
  double selected_h = std::numeric_limits<double>::quiet_NaN();
  double kappa_bound = 0.0;  // 3 (M+1)
  double vqls_gamma_threshold = 0.0;

  ClassicalConstants classical;
  QueryComplexityReport complexity;
};

/// Assembles the full report for a quadratic ODE at truncation level N,
/// horizon T, grid n_t and target accuracy eps.
BoundReport make_bound_report(const QuadODE& ode, double T, Index n_t, int N,
                              double eps);

std::string bound_report_json(const BoundReport& report);

}  // namespace nbvqpco
