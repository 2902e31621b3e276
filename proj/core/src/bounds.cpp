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

#include "nbvqpco/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

#include "nbvqpco/kron.hpp"

namespace nbvqpco {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double dense_spectral_norm(const SparseMatrix& m) {
  if (m.nonZeros() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd{Matrix(m)};
  return svd.singularValues()[0];
}

// u x du/dt + du/dt x u, the time derivative of the Kronecker square.
Vector kron_square_derivative(const Vector& u, const Vector& du) {
  const Index n = u.size();
  Vector out(n * n);
  for (Index a = 0; a < n; ++a) {
    out.segment(a * n, n) = u[a] * du + du[a] * u;
  }
  return out;
}

}  // namespace

std::vector<Vector> reference_trajectory(const QuadODE& ode, double T,
                                         Index steps) {
  if (steps < 1) throw std::invalid_argument("need at least one step");
  const double h = T / static_cast<double>(steps);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  Vector u = ode.u0;
  out.push_back(u);
  for (Index k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const Vector k1 = eval_rhs(ode, t, u);
    const Vector k2 = eval_rhs(ode, t + h / 2, u + (h / 2) * k1);
    const Vector k3 = eval_rhs(ode, t + h / 2, u + (h / 2) * k2);
    const Vector k4 = eval_rhs(ode, t + h, u + h * k3);
    u += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    out.push_back(u);
  }
  return out;
}

SystemNorms SystemNorms::compute(const QuadODE& ode, double T,
                                 Index traj_steps) {
  SystemNorms out;
  out.norm_F1 = dense_spectral_norm(ode.F1);
  out.norm_F2 = dense_spectral_norm(ode.F2);
  out.norm_u0 = ode.u0.norm();

  Eigen::EigenSolver<Matrix> eig{Matrix(ode.F1)};
  double max_re = -kInf;
  for (Index i = 0; i < eig.eigenvalues().size(); ++i) {
    max_re = std::max(max_re, eig.eigenvalues()[i].real());
  }
  out.re_lambda1 = max_re;

  if (ode.forcing_is_zero()) {
    out.norm_F0 = 0.0;
    out.norm_F0_dot = 0.0;
  } else {
    const Index samples = 201;
    const double dt = T / static_cast<double>(samples - 1);
    double max_f0 = 0.0;
    double max_df0 = 0.0;
    Vector prev = ode.F0(0.0);
    for (Index k = 0; k < samples; ++k) {
      const Vector f = ode.F0(static_cast<double>(k) * dt);
      max_f0 = std::max(max_f0, f.norm());
      if (k > 0) max_df0 = std::max(max_df0, (f - prev).norm() / dt);
      prev = f;
    }
    out.norm_F0 = max_f0;
    out.norm_F0_dot = max_df0;
  }

  const auto traj = reference_trajectory(ode, T, traj_steps);
  out.traj_norms.reserve(traj.size());
  for (const Vector& u : traj) out.traj_norms.push_back(u.norm());
  out.traj_T = T;
  out.norm_uT = out.traj_norms.back();
  return out;
}

double compute_R2(const SystemNorms& norms) {
  if (norms.norm_u0 <= 0.0) {
    throw std::invalid_argument("R2 needs a nonzero initial state");
  }
  if (!norms.dissipative()) {
    throw std::invalid_argument(
        "R2 needs Re(lambda_1) < 0; the linear part is not dissipative");
  }
  return (norms.norm_u0 * norms.norm_F2 + norms.norm_F0 / norms.norm_u0) /
         std::abs(norms.re_lambda1);
}

RescaleInfo rescale(const QuadODE& ode, const SystemNorms& norms) {
  const double r2 = compute_R2(norms);
  if (r2 >= 1.0) {
    throw std::runtime_error("rescaling guarantee void: R2 >= 1");
  }
  const double lam = std::abs(norms.re_lambda1);
  RescaleInfo info;
  if (norms.norm_F2 > 0.0) {
    const double disc = lam * lam - 4.0 * norms.norm_F2 * norms.norm_F0;
    if (disc < 0.0) {
      throw std::runtime_error("rescaling discriminant negative");
    }
    info.r_plus = (lam + std::sqrt(disc)) / (2.0 * norms.norm_F2);
    info.r_minus = (lam - std::sqrt(disc)) / (2.0 * norms.norm_F2);
    info.gamma = 1.0 / std::sqrt(norms.norm_u0 * info.r_plus);
  } else {
    // Degenerate quadratic: any gamma below both |Re lambda_1|/||F0|| and
    // 1/||u0|| works (R2 < 1 keeps the interval nonempty); take the
    // midpoint-of-constraints choice.
    info.r_plus = kInf;
    info.r_minus = norms.norm_F0 > 0.0 ? norms.norm_F0 / lam : 0.0;
    const double cap_f0 =
        norms.norm_F0 > 0.0 ? lam / norms.norm_F0 : kInf;
    const double cap_u0 = 1.0 / norms.norm_u0;
    info.gamma = 0.5 * std::min(cap_f0, cap_u0);
  }

  const double gamma = info.gamma;
  QuadODE scaled;
  if (!ode.forcing_is_zero()) {
    auto f0 = ode.F0;
    scaled = QuadODE::make(
        ode.n_x, [f0, gamma](double t) { return (gamma * f0(t)).eval(); },
        ode.F1, ode.F2 / gamma, gamma * ode.u0, ode.param_split);
  } else {
    scaled = QuadODE::make(ode.n_x, nullptr, ode.F1, ode.F2 / gamma,
                           gamma * ode.u0, ode.param_split);
  }

  // Assert the rescaling postconditions numerically.
  const double f2s = norms.norm_F2 / gamma;
  const double f0s = gamma * norms.norm_F0;
  if (!(f2s + f0s < lam) || !(gamma * norms.norm_u0 < 1.0)) {
    throw std::runtime_error("rescaling postconditions violated");
  }
  info.ode = std::move(scaled);
  return info;
}

double truncation_bound(const SystemNorms& norms, int N, double t) {
  if (N < 1) throw std::invalid_argument("truncation level must be >= 1");
  return t * static_cast<double>(N) * norms.norm_F2 *
         std::pow(norms.norm_u0, N + 1);
}

EulerBound euler_bound_and_hmax(const SystemNorms& norms, int N) {
  if (N < 1) throw std::invalid_argument("truncation level must be >= 1");
  EulerBound out;
  const double fsum = norms.norm_F2 + norms.norm_F1 + norms.norm_F0;
  out.coef = 3.0 * std::pow(static_cast<double>(N), 2.5) *
             (fsum * fsum + norms.norm_F0_dot);

  const double lam = std::abs(norms.re_lambda1);
  const double term1 =
      norms.norm_F1 > 0.0 ? 1.0 / (N * norms.norm_F1) : kInf;
  const double numer = 2.0 * (lam - norms.norm_F2 - norms.norm_F0);
  const double f1f0 = norms.norm_F1 + norms.norm_F0;
  const double denom =
      N * (lam * lam - f1f0 * f1f0 + norms.norm_F1 * norms.norm_F1);
  double term2 = kNaN;
  if (norms.dissipative() && numer > 0.0 && denom > 0.0) {
    term2 = numer / denom;
  }
  out.h_max = std::isnan(term2) ? kNaN : std::min(term1, term2);
  return out;
}

namespace {

// Trapezoid integral of sum_{i=1..N} ||u(t)||^{2i} over [0, T] from the
// sampled trajectory profile; dividing by h lower-bounds ||w_c||^2 for
// decaying systems.
double lifted_norm_integral(const SystemNorms& norms, int N) {
  const auto& p = norms.traj_norms;
  if (p.size() < 3) throw std::logic_error("trajectory profile missing");
  const double dt = norms.traj_T / static_cast<double>(p.size() - 1);
  auto f = [&](std::size_t k) {
    double total = 0.0;
    double pw = 1.0;
    for (int i = 1; i <= N; ++i) {
      pw *= p[k] * p[k];
      total += pw;
    }
    return total;
  };
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    integral += 0.5 * dt * (f(k) + f(k + 1));
  }
  return integral;
}

}  // namespace

double h_max_with_accuracy(const SystemNorms& norms, int N, double T,
                           double eps, double alpha) {
  (void)alpha;
  const EulerBound eb = euler_bound_and_hmax(norms, N);
  if (std::isnan(eb.h_max)) return kNaN;
  const double fsum = norms.norm_F2 + norms.norm_F1 + norms.norm_F0;
  const double big = 2.0 * fsum * fsum + norms.norm_F0_dot;
  // Accuracy term h <= eps'^2/(36 N^5 T^3 big^2) with
  // eps'^2 = (I_N / h) eps^2 / 4 resolved for h.
  const double integral = lifted_norm_integral(norms, N);
  const double h3 =
      std::sqrt(integral * eps * eps /
                (144.0 * std::pow(static_cast<double>(N), 5.0) * T * T * T *
                 big * big));
  return std::min(eb.h_max, h3);
}

std::pair<double, int> select_h_N(const SystemNorms& norms, double T,
                                  double eps, double alpha) {
  if (alpha <= 1.0) throw std::invalid_argument("alpha must exceed 1");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!norms.dissipative()) {
    throw std::runtime_error("selection rules need Re(lambda_1) < 0");
  }
  if (!(norms.norm_u0 < 1.0)) {
    throw std::runtime_error("selection rules need ||u0|| < 1; rescale first");
  }
  const double r2 = compute_R2(norms);
  if (r2 >= 1.0) throw std::runtime_error("selection rules need R2 < 1");

  const double n_floor = (1.0 + alpha / 2.0) / std::log(1.0 / norms.norm_u0);
  const int n_start = std::max(1, static_cast<int>(std::floor(n_floor)) + 1);
  constexpr int kMaxLevel = 64;

  for (int N = n_start; N <= kMaxLevel; ++N) {
    const double h_cap = h_max_with_accuracy(norms, N, T, eps, alpha);
    if (std::isnan(h_cap) || !(h_cap > 0.0)) break;
    const Index M = static_cast<Index>(std::ceil(T / h_cap));
    const double h = T / static_cast<double>(M);
    const double K = h * std::pow(static_cast<double>(N), alpha);

    const double integral = lifted_norm_integral(norms, N);
    const double eps_prime = std::sqrt(integral / h) * eps / 2.0;

    double delta1 = kInf;
    double delta2 = kInf;
    if (norms.norm_F2 > 0.0) {
      delta1 = eps_prime * std::sqrt(K) /
               (2.0 * std::pow(T, 1.5) * norms.norm_F2 * norms.norm_u0);
      delta2 = norms.norm_uT / (4.0 * T * norms.norm_F2 * norms.norm_u0);
    }
    const double lhs = std::pow(static_cast<double>(N), 1.0 + alpha / 2.0) *
                       std::pow(norms.norm_u0, N);
    if (lhs <= std::min(delta1, delta2)) {
      return {h, N};
    }
  }
  throw std::runtime_error(
      "no admissible (h, N) found below the level cap; premises too tight");
}

double vqls_threshold(double eps, Index M, Index N_c) {
  if (!(eps > 0.0) || M < 1 || N_c < 1) {
    throw std::invalid_argument("threshold needs eps > 0, M >= 1, N_c >= 1");
  }
  const double inner = 1.0 - eps * eps / 8.0;
  const double m1 = static_cast<double>(M + 1);
  return (1.0 - inner * inner) /
         (9.0 * m1 * m1 * std::log(static_cast<double>(N_c) * m1));
}

ClassicalConstants classical_constants(const QuadODE& ode,
                                       const SystemNorms& norms, double T) {
  ClassicalConstants out;
  out.L = norms.norm_F1 + 2.0 * norms.norm_u0 * norms.norm_F2;

  // max ||u''|| sampled along a reference trajectory; the analysis only
  // asserts boundedness.
  const Index steps = 2000;
  const auto traj = reference_trajectory(ode, T, steps);
  double m_ddot = 0.0;
  const double dt_f0 = 1e-6;
  for (Index k = 0; k <= steps; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(steps);
    const Vector& u = traj[static_cast<std::size_t>(k)];
    const Vector du = eval_rhs(ode, t, u);
    Vector ddu = ode.F1 * du;
    ddu += ode.F2 * kron_square_derivative(u, du);
    if (!ode.forcing_is_zero()) {
      ddu += (ode.F0(t + dt_f0) - ode.F0(t)) / dt_f0;
    }
    m_ddot = std::max(m_ddot, ddu.norm());
  }
  out.M_ddot = m_ddot;
  out.C = out.L > 0.0 ? m_ddot / (2.0 * out.L) * (std::exp(out.L * T) - 1.0)
                      : m_ddot * T / 2.0;

  const Vector f_at_0 = eval_rhs(ode, 0.0, ode.u0);
  const double fn2 = f_at_0.squaredNorm();
  const double numer = norms.norm_F0 + norms.re_lambda1 * norms.norm_u0 +
                       norms.norm_F2 * norms.norm_u0 * norms.norm_u0;
  out.h0 = fn2 > 0.0 ? -numer * norms.norm_u0 / fn2 : kInf;
  return out;
}

QueryComplexityReport query_complexity_estimates(
    const QueryComplexityParams& params) {
  if (!(params.eps > 0.0) || params.norm_wc <= 0.0 || params.norm_uc <= 0.0) {
    throw std::invalid_argument("complexity estimates need positive inputs");
  }
  QueryComplexityReport out;
  const double t4 = std::pow(params.T, 4.0) /
                    (params.norm_wc * params.norm_wc * params.eps * params.eps);
  out.quantum = std::pow(std::log(static_cast<double>(params.n_x) * t4), 8.5) *
                t4 * std::log(1.0 / params.eps);
  out.classical = static_cast<double>(params.sparsity * params.n_x) *
                  params.T * params.T /
                  (params.norm_uc * params.norm_uc * params.eps * params.eps);
  return out;
}

BoundReport make_bound_report(const QuadODE& ode, double T, Index n_t, int N,
                              double eps) {
  BoundReport report;
  report.N = N;
  report.T = T;
  report.eps = eps;
  report.M = n_t - 1;

  const SystemNorms norms = SystemNorms::compute(ode, T);
  report.re_lambda1_negative = norms.dissipative();
  report.u0_below_one = norms.norm_u0 < 1.0;
  if (report.re_lambda1_negative) {
    report.R2 = compute_R2(norms);
    report.r2_below_one = report.R2 < 1.0;
  } else {
    report.R2 = kInf;
    report.r2_below_one = false;
  }

  if (report.r2_below_one) {
    try {
      const RescaleInfo info = rescale(ode, norms);
      report.rescale_gamma = info.gamma;
      report.r_plus = info.r_plus;
      report.r_minus = info.r_minus;
    } catch (const std::exception&) {
      // Leave the rescale fields unset; flags already record the premises.
    }
  }

  Index n_c = 0;
  for (int i = 1; i <= N; ++i) n_c += ipow(ode.n_x, i);
  report.N_c = n_c;

  report.truncation_at_T = truncation_bound(norms, N, T);
  const EulerBound eb = euler_bound_and_hmax(norms, N);
  report.euler_coef = eb.coef;
  report.h_max = eb.h_max;
  report.h_max_accuracy = h_max_with_accuracy(norms, N, T, eps);
  if (norms.norm_u0 < 1.0 && norms.norm_u0 > 0.0) {
    report.N_min_rule = 2.0 / std::log(1.0 / norms.norm_u0);
  }
  if (report.r2_below_one && report.u0_below_one) {
    try {
      const auto [h, level] = select_h_N(norms, T, eps);
      report.selected_h = h;
      report.selected_N = level;
    } catch (const std::exception&) {
      // Selection can fail when premises are marginal; report stays partial.
    }
  }
  report.kappa_bound = 3.0 * static_cast<double>(report.M + 1);
  report.vqls_gamma_threshold = vqls_threshold(eps, report.M, report.N_c);
  report.classical = classical_constants(ode, norms, T);

  QueryComplexityParams qp;
  qp.n_x = ode.n_x;
  qp.T = T;
  qp.eps = eps;
  std::vector<Index> row_nnz(static_cast<std::size_t>(ode.n_x), 0);
  for (const SparseMatrix* m : {&ode.F1, &ode.F2}) {
    for (int k = 0; k < m->outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(*m, k); it; ++it) {
        ++row_nnz[static_cast<std::size_t>(it.row())];
      }
    }
  }
  qp.sparsity = *std::max_element(row_nnz.begin(), row_nnz.end());
  double wc2 = 0.0;
  double uc2 = 0.0;
  const double h_for_sum =
      report.M > 0 ? T / static_cast<double>(report.M) : T;
  const auto& p = norms.traj_norms;
  for (Index k = 0; k <= report.M; ++k) {
    const double t = std::min(T, static_cast<double>(k) * h_for_sum);
    const auto idx = static_cast<std::size_t>(
        std::llround(t / norms.traj_T * static_cast<double>(p.size() - 1)));
    const double un = p[std::min(idx, p.size() - 1)];
    double pw = 1.0;
    for (int i = 1; i <= N; ++i) {
      pw *= un * un;
      wc2 += pw;
    }
    uc2 += un * un;
  }
  qp.norm_wc = std::sqrt(wc2);
  qp.norm_uc = std::sqrt(uc2);
  report.complexity = query_complexity_estimates(qp);
  return report;
}

std::string bound_report_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  auto put = [&](const char* key, double v) {
    if (std::isnan(v)) {
      j[key] = nullptr;
    } else if (std::isinf(v)) {
      j[key] = v > 0 ? "inf" : "-inf";
    } else {
      j[key] = v;
    }
  };
  put("R2", r.R2);
  j["premises"] = {{"re_lambda1_negative", r.re_lambda1_negative},
                   {"r2_below_one", r.r2_below_one},
                   {"u0_below_one", r.u0_below_one}};
  put("rescale_gamma", r.rescale_gamma);
  put("r_plus", r.r_plus);
  put("r_minus", r.r_minus);
  j["N"] = r.N;
  j["T"] = r.T;
  j["eps"] = r.eps;
  j["M"] = r.M;
  j["N_c"] = r.N_c;
  put("truncation_bound_at_T", r.truncation_at_T);
  put("euler_bound_coef", r.euler_coef);
  put("h_max", r.h_max);
  put("h_max_with_accuracy", r.h_max_accuracy);
  put("N_min_rule", r.N_min_rule);
  j["selected_N"] = r.selected_N;
  put("selected_h", r.selected_h);
  put("kappa_bound", r.kappa_bound);
  put("vqls_gamma_threshold", r.vqls_gamma_threshold);
  j["classical"] = {{"L", r.classical.L},
                    {"M_ddot", r.classical.M_ddot},
                    {"C", r.classical.C},
                    {"h0", std::isinf(r.classical.h0) ? -1.0 : r.classical.h0}};
  j["complexity"] = {{"quantum_estimate", r.complexity.quantum},
                     {"classical_estimate", r.complexity.classical}};
  return j.dump(2);
}

}  // namespace nbvqpco
