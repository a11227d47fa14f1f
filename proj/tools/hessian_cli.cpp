// Batch front-end: experiment configs in, tables / certificates / plot data
// out. Subcommands: check-domain, solve, verify, mc, converge.
// Exit codes: 0 success, 1 usage or parse error, 2 certification failure,
// 3 non-convergence.

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hessian/complexlift.hpp"
#include "hessian/config.hpp"
#include "hessian/errors.hpp"
#include "hessian/mc.hpp"
#include "hessian/rng.hpp"
#include "hessian/solver.hpp"

using namespace hess;
using nlohmann::ordered_json;

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<uint64_t> seed;
  int threads = 0;  // 0 = available parallelism
  bool force = false;
};

int effective_threads(const CliOptions& opt) {
  if (opt.threads > 0) return opt.threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

ExperimentConfig load(const CliOptions& opt) {
  ExperimentConfig cfg = parse_config_file(opt.config_path);
  if (opt.seed) {
    cfg.controls.seed = *opt.seed;
    cfg.mc.seed = *opt.seed;
  }
  return cfg;
}

std::string out_path(const CliOptions& opt, const std::string& name) {
  if (opt.out_dir.empty() || opt.out_dir == ".") return name;
  return opt.out_dir + "/" + name;
}

/// The real-realm operator actually discretized (the lift when complex).
HessianOperator working_operator(const ExperimentConfig& cfg) {
  return cfg.complex_realm ? lifted_operator(cfg.op) : cfg.op;
}

ControlSet build_controls(const ExperimentConfig& cfg) {
  if (cfg.complex_realm) return lifted_control_grid(working_operator(cfg), cfg.controls);
  return control_grid(cfg.op, cfg.controls);
}

DirichletProblem make_problem(const ExperimentConfig& cfg) {
  DirichletProblem prob;
  prob.op = working_operator(cfg);
  prob.dom = cfg.dom;
  prob.f = cfg.f;
  prob.phi = cfg.phi;
  return prob;
}

ordered_json convexity_json(const ConvexityReport& r) {
  ordered_json j;
  j["pass"] = r.pass;
  j["n_samples"] = r.n_samples;
  j["witness_t"] = r.witness_t;
  if (r.sigma_shortcut_agrees) j["sigma_shortcut_agrees"] = *r.sigma_shortcut_agrees;
  if (r.mu_shortcut_agrees) j["mu_shortcut_agrees"] = *r.mu_shortcut_agrees;
  if (!r.pass && !r.worst_point.empty()) j["worst_point"] = r.worst_point;
  return j;
}

struct Certification {
  ConvexityReport convexity;
  BarrierCertificate barrier;
  ordered_json report;
};

/// Boundary convexity check for the operator's cone plus a barrier built on
/// the experiment's own control set. Throws certification_failure when the
/// domain fails either part.
Certification certify(const ExperimentConfig& cfg, const ControlSet& controls) {
  Certification cert;
  cert.convexity = cfg.complex_realm
                       ? check_strict_theta_pseudoconvexity(cfg.dom, cfg.op,
                                                            cfg.convexity_samples, 1e6)
                       : check_strict_gamma_convexity(cfg.dom, cfg.op, cfg.convexity_samples, 1e6);
  cert.report["config_hash"] = hash_hex(fnv1a64(cfg.canonical));
  cert.report["boundary_convexity"] = convexity_json(cert.convexity);
  if (!cert.convexity.pass) {
    cert.report["certified"] = false;
    throw certification_failure("boundary convexity check failed");
  }
  cert.barrier = build_barrier(cfg.dom, controls);
  ordered_json b;
  b["C"] = cert.barrier.C;
  b["epsilon"] = cert.barrier.epsilon;
  b["worst_residual"] = cert.barrier.worst_residual;
  b["sample_count"] = cert.barrier.sample_count;
  cert.report["barrier"] = b;
  cert.report["certified"] = true;
  return cert;
}

int cmd_check_domain(const CliOptions& opt) {
  ExperimentConfig cfg = load(opt);
  ControlSet controls = build_controls(cfg);
  std::string path = out_path(opt, "certificate.json");
  try {
    Certification cert = certify(cfg, controls);
    write_json(path, cert.report);
    std::cout << "certified: barrier C = " << format_double(cert.barrier.C) << "\n";
    return 0;
  } catch (const certification_failure& e) {
    ordered_json rep;
    rep["config_hash"] = hash_hex(cfg.hash);
    rep["certified"] = false;
    rep["reason"] = e.what();
    write_json(path, rep);
    std::cout << "certification failed: " << e.what() << "\n";
    return 2;
  }
}

double max_error_vs_exact(const Grid& grid, const GridSolution& sol, const Field& exact) {
  double err = 0.0;
  for (int n = 0; n < grid.n_interior(); ++n)
    err = std::max(err, std::abs(sol.values[n] - field_eval(exact, grid.node_points[n])));
  return err;
}

int cmd_solve(const CliOptions& opt) {
  ExperimentConfig cfg = load(opt);
  ControlSet controls = build_controls(cfg);
  if (!opt.force) certify(cfg, controls);  // throws -> exit 2

  DirichletProblem prob = make_problem(cfg);
  validate_problem(prob);
  double h = cfg.ladder.back();
  Grid grid = build_grid(cfg.dom, h);
  GridSolution sol = policy_iteration(prob, grid, controls, cfg.solve);

  CsvTable table([&] {
    std::vector<std::string> header;
    for (int i = 0; i < cfg.dom.dim; ++i) header.push_back("x" + std::to_string(i) + " [length]");
    header.push_back("u [value]");
    header.push_back("policy [index]");
    return header;
  }(), cfg.hash);
  for (int n = 0; n < grid.n_interior(); ++n) {
    std::vector<std::string> row;
    for (double c : grid.node_points[n]) row.push_back(format_double(c));
    row.push_back(format_double(sol.values[n]));
    row.push_back(std::to_string(sol.policy[n]));
    table.add_row(row);
  }
  table.write(out_path(opt, "solution.csv"));

  ordered_json summary;
  summary["config_hash"] = hash_hex(cfg.hash);
  summary["h"] = h;
  summary["n_nodes"] = grid.n_interior();
  summary["n_controls"] = static_cast<int>(controls.coeffs.size());
  summary["converged"] = sol.converged;
  summary["iterations"] = sol.iterations;
  summary["residual_inf_norm"] = sol.residual_inf_norm;
  if (cfg.exact_solution)
    summary["max_error_vs_exact"] = max_error_vs_exact(grid, sol, *cfg.exact_solution);
  if (!sol.converged) summary["partial"] = true;
  write_json(out_path(opt, "summary.json"), summary);

  std::cout << (sol.converged ? "converged" : "NOT converged") << " in " << sol.iterations
            << " iterations, residual " << format_double(sol.residual_inf_norm) << "\n";
  return sol.converged ? 0 : 3;
}

int cmd_verify(const CliOptions& opt) {
  ExperimentConfig cfg = load(opt);
  if (cfg.complex_realm)
    throw config_error("verify: equivalence checks are posed for real-realm operators");
  ControlSet controls = control_grid(cfg.op, cfg.verify_controls);
  int d = cfg.op.dim;

  auto eng = make_engine(cfg.controls.seed, 0xEB0EB0);
  std::uniform_real_distribution<double> lam(0.05, 2.0), level(0.0, 1.0);
  CsvTable table({"sample [index]", "residual [value]", "t1_oracle [value]", "abs_diff [value]",
                  "pass [bool]"},
                 cfg.hash);
  int n_pass = 0;
  for (int i = 0; i < cfg.verify_pairs; ++i) {
    // positive-definite draws stay inside every cone handled here
    std::vector<double> w(d);
    for (double& x : w) x = lam(eng);
    SymMatrix gamma = SymMatrix::conjugated_diagonal(haar_orthogonal(eng, d), w);
    double c = level(eng) * evaluate(cfg.op, gamma);
    EquivalenceReport rep = verify_equivalence(cfg.op, controls, gamma, c, cfg.verify_tol);
    n_pass += rep.pass ? 1 : 0;
    table.add_row({std::to_string(i), format_double(rep.residual), format_double(rep.t1_oracle),
                   format_double(std::abs(rep.residual + rep.t1_oracle)),
                   rep.pass ? "true" : "false"});
  }
  table.write(out_path(opt, "equivalence.csv"));
  std::cout << "equivalence: " << n_pass << "/" << cfg.verify_pairs << " pass (tol "
            << format_double(cfg.verify_tol) << ", " << controls.coeffs.size() << " controls)\n";
  return n_pass == cfg.verify_pairs ? 0 : 3;
}

int cmd_mc(const CliOptions& opt) {
  ExperimentConfig cfg = load(opt);
  ControlSet controls = build_controls(cfg);
  DirichletProblem prob = make_problem(cfg);
  validate_problem(prob);
  if (cfg.mc.points.empty()) throw config_error("mc: no evaluation points configured");

  std::optional<Grid> grid;
  std::optional<GridSolution> sol;
  if (cfg.mc.use_grid_policy) {
    grid = build_grid(cfg.dom, cfg.ladder.back());
    sol = policy_iteration(prob, *grid, controls, cfg.solve);
    if (!sol->converged) return 3;
  }

  int threads = effective_threads(opt);
  ordered_json out = ordered_json::array();
  auto record = [&](const std::vector<double>& x, const McPolicy& pol) {
    McEstimate est = mc_value(prob, x, pol, cfg.mc.n_paths, cfg.mc.dt, cfg.mc.seed, threads);
    ordered_json e;
    e["point"] = x;
    e["policy"] = est.policy;
    e["mean"] = est.mean;
    e["std_error"] = est.std_error;
    e["n_paths"] = est.n_paths;
    e["dt"] = est.dt;
    e["censored_paths"] = est.censored_paths;
    out.push_back(e);
  };
  for (const auto& x : cfg.mc.points) {
    for (int idx : cfg.mc.control_indices) record(x, constant_policy(controls, idx));
    if (cfg.mc.use_grid_policy) record(x, grid_policy(controls, *grid, *sol));
  }
  ordered_json doc;
  doc["config_hash"] = hash_hex(cfg.hash);
  doc["estimates"] = out;
  write_json(out_path(opt, "mc.json"), doc);
  std::cout << "mc: " << out.size() << " estimates written\n";
  return 0;
}

int cmd_converge(const CliOptions& opt) {
  ExperimentConfig cfg = load(opt);
  ControlSet controls = build_controls(cfg);
  std::optional<Certification> cert;
  if (!opt.force) cert = certify(cfg, controls);

  DirichletProblem prob = make_problem(cfg);
  validate_problem(prob);
  CsvTable table({"h [length]", "n_nodes [count]", "iterations [count]", "error [max-norm]",
                  "n1_hat [estimate]", "n2_hat [estimate]", "runtime [s]"},
                 cfg.hash);
  bool all_converged = true;
  for (double h : cfg.ladder) {
    auto t0 = std::chrono::steady_clock::now();
    Grid grid = build_grid(cfg.dom, h);
    GridSolution sol = policy_iteration(prob, grid, controls, cfg.solve);
    all_converged = all_converged && sol.converged;
    double err = cfg.exact_solution ? max_error_vs_exact(grid, sol, *cfg.exact_solution)
                                    : std::nan("");
    double n1 = std::nan(""), n2 = std::nan("");
    if (cert) {
      n1 = regularity_probe(prob, grid, sol, cert->barrier, ProbeMode::gradient).n_hat;
      n2 = regularity_probe(prob, grid, sol, cert->barrier, ProbeMode::second).n_hat;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    table.add_row({format_double(h), std::to_string(grid.n_interior()),
                   std::to_string(sol.iterations), format_double(err), format_double(n1),
                   format_double(n2), format_double(secs)});
    std::cout << "h = " << format_double(h) << ": error " << format_double(err) << ", N2 "
              << format_double(n2) << (sol.converged ? "" : " (NOT converged)") << "\n";
  }
  table.write(out_path(opt, "convergence.csv"));
  return all_converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degenerate Hessian-equation solver and verification toolkit"};
  app.require_subcommand(1);

  CliOptions opt;
  uint64_t seed_flag = 0;
  app.add_option("--config", opt.config_path, "experiment config file (JSON)")->required();
  app.add_option("--out", opt.out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed_flag, "override the config seeds");
  app.add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  app.add_flag("--force", opt.force, "skip domain certification before solving");

  auto* c_check = app.add_subcommand("check-domain", "certify convexity and build a barrier");
  auto* c_solve = app.add_subcommand("solve", "solve the Dirichlet problem on the finest grid");
  auto* c_verify = app.add_subcommand("verify", "equivalence and property checks");
  auto* c_mc = app.add_subcommand("mc", "Monte Carlo value estimates");
  auto* c_conv = app.add_subcommand("converge", "refinement study over the grid ladder");
  for (CLI::App* sub : {c_check, c_solve, c_verify, c_mc, c_conv}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (seed_opt->count() > 0) opt.seed = seed_flag;

  try {
    if (c_check->parsed()) return cmd_check_domain(opt);
    if (c_solve->parsed()) return cmd_solve(opt);
    if (c_verify->parsed()) return cmd_verify(opt);
    if (c_mc->parsed()) return cmd_mc(opt);
    if (c_conv->parsed()) return cmd_converge(opt);
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const config_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const certification_failure& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
