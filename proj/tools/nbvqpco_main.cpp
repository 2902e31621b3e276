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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbvqpco/bounds.hpp"
#include "nbvqpco/invopt.hpp"
#include "nbvqpco/io.hpp"
#include "nbvqpco/manifest.hpp"
#include "nbvqpco/sigma.hpp"
#include "nbvqpco/statevector.hpp"

namespace fs = std::filesystem;
using namespace nbvqpco;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int jobs = 1;
};

void apply_size_cap_env() {
  // The cap is read once at startup; the types module handles the caching.
  (void)size_cap();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  return os;
}

void write_manifest(const CommonArgs& args, const std::string& command) {
  RunManifest m;
  m.command = command;
  m.config_path = args.config_path;
  m.seed = args.seed;
  m.output_dir = args.out_dir;
  m.input_hash =
      args.config_path.empty() ? "" : git_blob_hash(args.config_path);
  m.write((fs::path(args.out_dir) / "manifest.json").string());
}

BurgersConfig load_config(const std::string& path) {
  if (path.empty()) {
    BurgersConfig cfg;
    cfg.validate();
    return cfg;
  }
  return BurgersConfig::from_file(path);
}

Scheme parse_scheme(const std::string& name) {
  if (name == "forward") return Scheme::kForward;
  if (name == "backward") return Scheme::kBackward;
  throw CLI::ValidationError("--scheme", "must be forward or backward");
}

void write_solution_csv(const fs::path& path, const BlockLinearSystem& sys,
                        const Vector& w) {
  auto os = open_out(path);
  os << "time_step,grid_index,value\n";
  for (Index k = 0; k <= sys.M; ++k) {
    for (Index j = 0; j < sys.layout.n_x; ++j) {
      os << k << "," << j + 1 << ","
         << format_full(w[sys.position(k, 1, j)]) << "\n";
    }
  }
}

void write_register_csv(const fs::path& path, const Vector& w) {
  auto os = open_out(path);
  os << "index,amplitude\n";
  for (Index i = 0; i < w.size(); ++i) {
    os << i << "," << format_full(w[i]) << "\n";
  }
}

int cmd_solve(const CommonArgs& args, const std::string& scheme_name, int N,
              const std::string& inner, bool export_system, int layers,
              Index max_iter, int restarts) {
  const BurgersConfig cfg = load_config(args.config_path);
  const Scheme scheme = parse_scheme(scheme_name);
  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);

  const QuadODE ode = discretize_burgers(cfg);
  const CarlemanSystem carl = build_carleman(ode, N);
  const BlockLinearSystem sys = assemble(carl, cfg.T, cfg.n_t, scheme);

  if (export_system) {
    write_coo_file((out / "A_tilde.coo").string(), sys.A_tilde);
    write_vector_file((out / "b_tilde.txt").string(), sys.b_tilde);
    write_coo_file((out / "A_N.coo").string(), carl.matrix_at(0.0));
  }

  const DirectSolution classical = solve_direct(sys);
  write_solution_csv(out / "solution.csv", sys, classical.w);
  write_register_csv(out / "normalized_solution.csv", classical.w_normalized);

  nlohmann::ordered_json summary;
  summary["scheme"] = scheme_name;
  summary["N"] = N;
  summary["dimension"] = sys.dim();
  summary["h"] = sys.h;
  summary["kappa"] = condition_number(sys);

  const bool run_vqls = inner == "vqls" || inner == "both";
  if (run_vqls) {
    if (scheme != Scheme::kBackward) {
      throw std::runtime_error(
          "the tensor-decomposition path covers the backward scheme");
    }
    const auto dec = decompose_pipeline(sys).at_parameter(cfg.nu);
    const Vector b = prepare_b_state(sys).real_amplitudes();
    const VqlsProblem problem =
        VqlsProblem::make(std::make_shared<SigmaMap>(dec), b);
    VqlsOptions opts;
    opts.seed = args.seed;
    opts.max_iter = max_iter;
    opts.restarts = restarts;
    const VqlsRun run =
        vqls_solve(problem, Ansatz{problem.n_qubits(), layers}, opts);

    Vector aligned = run.final_state.real_amplitudes();
    if (classical.w_normalized.dot(aligned) < 0.0) aligned = -aligned;
    write_register_csv(out / "vqls_solution.csv", aligned);
    {
      auto os = open_out(out / "vqls_log.csv");
      os << "iter,cost,grad_norm\n";
      for (std::size_t i = 0; i < run.cost_trace.size(); ++i) {
        os << i << "," << format_full(run.cost_trace[i]) << ","
           << format_full(run.grad_norm_trace[i]) << "\n";
      }
    }
    const double e_metric = solution_error_metric(
        physical_series(sys, classical.w_normalized),
        physical_series(sys, aligned), sys.n_t());
    summary["vqls_achieved_cost"] = run.achieved_cost;
    summary["vqls_iterations"] = run.iterations;
    summary["lcu_terms"] = dec.term_count();
    summary["E"] = e_metric;
    std::cout << "E = " << format_full(e_metric) << "\n";
  }

  open_out(out / "summary.json") << summary.dump(2) << "\n";
  write_manifest(args, "solve");
  return 0;
}

int cmd_invert(const CommonArgs& args, const std::string& inner,
               const std::string& grid_spec, int N, int layers,
               Index max_iter, int restarts, const std::string& outer) {
  const BurgersConfig cfg = load_config(args.config_path);
  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);

  InverseProblem prob;
  prob.config = cfg;
  prob.N = N;
  prob.ansatz_layers = layers;
  prob.inner = inner == "vqls" ? InnerSolver::kVqls : InnerSolver::kClassical;
  prob.outer =
      outer == "nelder-mead" ? OuterMethod::kNelderMead : OuterMethod::kGrid;
  prob.vqls.seed = args.seed;
  prob.vqls.max_iter = max_iter;
  prob.vqls.restarts = restarts;

  if (!grid_spec.empty()) {
    std::istringstream in(grid_spec);
    std::string lo, hi, step;
    if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') ||
        !std::getline(in, step)) {
      throw CLI::ValidationError("--grid", "expected lo:hi:step");
    }
    prob.nu_min = std::stod(lo);
    prob.nu_max = std::stod(hi);
    prob.grid_step = std::stod(step);
  }

  const InversionResult res = run_nbvqpco(prob, args.jobs);

  {
    auto os = open_out(out / "cost_curve.csv");
    os << "nu,design_cost,inner_cost_achieved,E\n";
    for (const GridPoint& p : res.curve) {
      os << format_full(p.nu) << "," << format_full(p.cost) << ","
         << format_full(p.inner_cost) << ","
         << (std::isnan(p.e_metric) ? "" : format_full(p.e_metric)) << "\n";
    }
  }

  nlohmann::ordered_json summary;
  summary["nu_star"] = res.nu_star;
  summary["cost_star"] = res.cost_star;
  summary["evaluations"] = res.evaluations;
  summary["inner"] = inner;
  summary["N"] = N;
  nlohmann::ordered_json diag = nlohmann::ordered_json::array();
  for (const GridPoint& p : res.curve) {
    nlohmann::ordered_json row;
    row["nu"] = p.nu;
    row["ok"] = p.ok;
    if (!p.ok) row["error"] = p.error;
    if (!std::isnan(p.kappa)) row["kappa"] = p.kappa;
    diag.push_back(row);
  }
  summary["points"] = diag;
  open_out(out / "summary.json") << summary.dump(2) << "\n";
  write_manifest(args, "invert");

  std::cout << "nu_star = " << format_full(res.nu_star) << "\n";
  return 0;
}

int cmd_lcu_census(std::vector<Index> nx_list, std::vector<Index> nt_list,
                   std::vector<int> n_list, Index pauli_max_dim,
                   const std::string& out_file) {
  auto os = open_out(out_file);
  os << "n_x,n_t,N,dim,sigma_A1,sigma_A2,sigma_total,bound_A1,bound_A2,"
        "pauli_A1,pauli_A2\n";
  for (Index n_x : nx_list) {
    for (Index n_t : nt_list) {
      for (int N : n_list) {
        BurgersConfig cfg;
        cfg.n_x = n_x;
        cfg.n_t = n_t;
        cfg.x_p_index = 1;
        const QuadODE ode = discretize_burgers(cfg);
        const BlockLinearSystem sys =
            assemble(build_carleman(ode, N), cfg.T, n_t, Scheme::kBackward);
        const PipelineDecomposition dec = decompose_pipeline(sys);
        const SigmaCountBounds bounds = sigma_count_bounds(n_x, n_t, N);

        os << n_x << "," << n_t << "," << N << "," << sys.dim() << ","
           << dec.A1.term_count() << "," << dec.A2.term_count() << ","
           << dec.A1.term_count() + dec.A2.term_count() << ","
           << bounds.a1_bound << "," << bounds.a2_bound << ",";
        if (sys.dim() <= pauli_max_dim && sys.split) {
          os << pauli_term_count(sys.split->A1) << ","
             << pauli_term_count(sys.split->A2);
        } else {
          // Blank cells mirror the runaway cost of the Pauli projection at
          // larger sizes.
          os << ",";
        }
        os << "\n";
      }
    }
  }
  return 0;
}

int cmd_decompose(const CommonArgs& args, int N) {
  const BurgersConfig cfg = load_config(args.config_path);
  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);

  const QuadODE ode = discretize_burgers(cfg);
  const BlockLinearSystem sys =
      assemble(build_carleman(ode, N), cfg.T, cfg.n_t, Scheme::kBackward);
  const PipelineDecomposition dec = decompose_pipeline(sys);

  open_out(out / "A1_terms.tsv") << dec.A1.export_terms();
  open_out(out / "A2_terms.tsv") << dec.A2.export_terms();

  const SigmaCountBounds bounds = sigma_count_bounds(cfg.n_x, cfg.n_t, N);
  nlohmann::ordered_json summary;
  summary["sigma_A1"] = dec.A1.term_count();
  summary["sigma_A2"] = dec.A2.term_count();
  summary["bound_A1"] = bounds.a1_bound;
  summary["bound_A2"] = bounds.a2_bound;
  open_out(out / "summary.json") << summary.dump(2) << "\n";
  write_manifest(args, "decompose");
  return 0;
}

int cmd_bounds(const CommonArgs& args, int N, double eps,
               const std::string& out_file) {
  const BurgersConfig cfg = load_config(args.config_path);
  const QuadODE ode = discretize_burgers(cfg);
  const BoundReport report = make_bound_report(ode, cfg.T, cfg.n_t, N, eps);
  const std::string json = bound_report_json(report);
  if (out_file.empty()) {
    std::cout << json << "\n";
  } else {
    open_out(out_file) << json << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carleman-lifted variational linear-solver pipeline for "
               "quadratic ODE inverse problems"};
  app.require_subcommand(1);

  CommonArgs common;

  auto add_common = [&](CLI::App* cmd, bool needs_out = true) {
    cmd->add_option("--config", common.config_path,
                    "flat key/value problem configuration");
    cmd->add_option("--seed", common.seed, "seed for randomized components");
    cmd->add_option("--jobs", common.jobs, "threads for independent points");
    if (needs_out) {
      cmd->add_option("--out", common.out_dir, "output directory");
    }
  };

  // solve
  std::string scheme = "backward";
  int level = 1;
  std::string inner = "classical";
  bool export_system = false;
  int layers = 3;
  Index max_iter = 200;
  int restarts = 3;
  auto* solve = app.add_subcommand("solve", "discretize, lift, assemble and "
                                            "solve one instance");
  add_common(solve);
  solve->add_option("--scheme", scheme, "forward or backward Euler");
  solve->add_option("--N", level, "lift truncation level");
  solve->add_option("--inner", inner, "classical, vqls, or both");
  solve->add_flag("--export-system", export_system,
                  "write A_tilde/b_tilde/A_N in coordinate text form");
  solve->add_option("--layers", layers, "ansatz repetitions");
  solve->add_option("--max-iter", max_iter, "inner optimizer iteration cap");
  solve->add_option("--restarts", restarts, "inner optimizer restarts");

  // invert
  std::string grid_spec;
  std::string outer = "grid";
  auto* invert = app.add_subcommand(
      "invert", "outer search for the viscosity against measured data");
  add_common(invert);
  invert->add_option("--inner", inner, "classical or vqls");
  invert->add_option("--grid", grid_spec, "nu grid as lo:hi:step");
  invert->add_option("--N", level, "lift truncation level");
  invert->add_option("--layers", layers, "ansatz repetitions");
  invert->add_option("--max-iter", max_iter, "inner optimizer iteration cap");
  invert->add_option("--restarts", restarts, "inner optimizer restarts");
  invert->add_option("--outer", outer, "grid or nelder-mead");

  // lcu-census
  std::vector<Index> nx_list{2, 4};
  std::vector<Index> nt_list{2, 4, 8};
  std::vector<int> n_list{1, 2, 3};
  Index pauli_max_dim = 256;
  std::string census_out = "census.csv";
  auto* census = app.add_subcommand(
      "lcu-census", "tensor-decomposition term counts across problem sizes");
  add_common(census, /*needs_out=*/false);
  census->add_option("--nx-list", nx_list, "spatial sizes");
  census->add_option("--nt-list", nt_list, "time grid sizes");
  census->add_option("--N-list", n_list, "lift truncation levels");
  census->add_option("--pauli-max-dim", pauli_max_dim,
                     "largest dimension for the Pauli comparison");
  census->add_option("--out", census_out, "census CSV path");

  // decompose
  auto* decompose = app.add_subcommand(
      "decompose", "export the tensor decomposition of the split system");
  add_common(decompose);
  decompose->add_option("--N", level, "lift truncation level");

  // bounds
  double eps = 0.1;
  std::string bounds_out;
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "error/complexity bound report for the configured problem");
  add_common(bounds_cmd, /*needs_out=*/false);
  bounds_cmd->add_option("--N", level, "lift truncation level");
  bounds_cmd->add_option("--eps", eps, "target accuracy");
  bounds_cmd->add_option("--out", bounds_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  apply_size_cap_env();
  try {
    if (solve->parsed()) {
      return cmd_solve(common, scheme, level, inner, export_system, layers,
                       max_iter, restarts);
    }
    if (invert->parsed()) {
      return cmd_invert(common, inner, grid_spec, level, layers, max_iter,
                        restarts, outer);
    }
    if (census->parsed()) {
      return cmd_lcu_census(nx_list, nt_list, n_list, pauli_max_dim,
                            census_out);
    }
    if (decompose->parsed()) {
      return cmd_decompose(common, level);
    }
    if (bounds_cmd->parsed()) {
      return cmd_bounds(common, level, eps, bounds_out);
    }
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
