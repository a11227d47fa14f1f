#include "hessian/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hessian/errors.hpp"
#include "hessian/rng.hpp"

namespace hess {

void validate_problem(const DirichletProblem& prob, int n_samples, uint64_t seed) {
  auto eng = make_engine(seed, 0x7A11DA7E);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c = domain_center(prob.dom);
  for (int s = 0; s < n_samples; ++s) {
    std::vector<double> b = boundary_point(prob.dom, random_direction(eng, prob.dom.dim));
    double frac = u(eng);
    std::vector<double> x(prob.dom.dim);
    for (int i = 0; i < prob.dom.dim; ++i) x[i] = c[i] + frac * (b[i] - c[i]);
    double fv = field_eval(prob.f, x);
    if (!(fv >= -1e-12) || !std::isfinite(fv))
      throw std::invalid_argument("validate_problem: f must be finite and nonnegative");
    if (!std::isfinite(field_eval(prob.phi, b)))
      throw std::invalid_argument("validate_problem: phi must be finite on the boundary");
  }
}

GridSolution policy_iteration(const DirichletProblem& prob, const Grid& grid,
                              const ControlSet& controls, const SolveOptions& opt) {
  if (controls.coeffs.empty()) throw std::invalid_argument("policy_iteration: empty control set");
  int n = grid.n_interior();
  int nc = static_cast<int>(controls.coeffs.size());

  std::vector<double> f_vals(n);
  for (int i = 0; i < n; ++i) f_vals[i] = field_eval(prob.f, grid.node_points[i]);

  GridSolution sol;
  sol.values.resize(n);
  sol.policy.assign(n, 0);
  for (int i = 0; i < n; ++i) sol.values[i] = field_eval(prob.phi, grid.node_points[i]);

  std::vector<StencilRow> rows(n);
  double inner_tol = opt.tol / 10.0;

  for (int outer = 0; outer < opt.max_outer; ++outer) {
    // ---- policy improvement: per-node argmin, ties to the lowest index ----
    double res_inf = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_c = 0;
      StencilRow best_row;
      for (int ci = 0; ci < nc; ++ci) {
        StencilRow row = control_row(grid, i, controls.coeffs[ci], f_vals[i], prob.phi);
        double r = row.diag * sol.values[i] + row.constant;
        for (const auto& [id, w] : row.neighbors) r += w * sol.values[id];
        if (r < best) {
          best = r;
          best_c = ci;
          best_row = std::move(row);
        }
      }
      sol.policy[i] = best_c;
      rows[i] = std::move(best_row);
      res_inf = std::max(res_inf, std::abs(best));
    }
    sol.residual_history.push_back(res_inf);
    sol.residual_inf_norm = res_inf;
    sol.iterations = outer + 1;
    if (res_inf <= opt.tol) {
      sol.converged = true;
      return sol;
    }

    // ---- policy evaluation: Gauss-Seidel on the frozen linear system ----
    double frozen = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < opt.max_inner_sweeps; ++sweep) {
      for (int i = 0; i < n; ++i) {
        const StencilRow& row = rows[i];
        double s = row.constant;
        for (const auto& [id, w] : row.neighbors) s += w * sol.values[id];
        sol.values[i] = -s / row.diag;
      }
      if (sweep % 16 == 15 || sweep == opt.max_inner_sweeps - 1) {
        frozen = 0.0;
        for (int i = 0; i < n; ++i) {
          const StencilRow& row = rows[i];
          double r = row.diag * sol.values[i] + row.constant;
          for (const auto& [id, w] : row.neighbors) r += w * sol.values[id];
          frozen = std::max(frozen, std::abs(r));
        }
        if (frozen <= inner_tol) break;
      }
    }
  }
  sol.converged = false;
  return sol;
}

ProbeReport regularity_probe(const DirichletProblem& prob, const Grid& grid,
                             const GridSolution& sol, const BarrierCertificate& cert,
                             ProbeMode mode) {
  int n = grid.n_interior();
  int d = grid.dom.dim;
  ProbeReport rep;
  rep.mode = mode;

  auto arm_value = [&](int node, int slot) {
    const GridArm& arm = grid.arms[node][slot];
    return (arm.neighbor >= 0) ? sol.values[arm.neighbor]
                               : field_eval(prob.phi, arm.boundary_point);
  };

  if (mode == ProbeMode::bound0) {
    auto eng = make_engine(1, 0xB0);
    double phi_sup = 0.0;
    for (int s = 0; s < 512; ++s) {
      std::vector<double> b = boundary_point(prob.dom, random_direction(eng, d));
      phi_sup = std::max(phi_sup, std::abs(field_eval(prob.phi, b)));
    }
    double f_sup = 0.0;
    for (int i = 0; i < n; ++i)
      f_sup = std::max(f_sup, std::abs(field_eval(prob.f, grid.node_points[i])));
    double inv_fi = 1.0 / value_at_identity(prob.op);
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double psi = barrier_value(prob.dom, cert, grid.node_points[i]);
      double bound = phi_sup + inv_fi * f_sup * psi + 10.0 * grid.h;
      rep.worst_violation = std::max(rep.worst_violation, std::abs(sol.values[i]) - bound);
    }
    rep.pass = rep.worst_violation <= 0.0;
    return rep;
  }

  for (int i = 0; i < n; ++i) {
    double psi = barrier_value(prob.dom, cert, grid.node_points[i]);
    std::vector<double> psi_grad = barrier_grad(prob.dom, cert, grid.node_points[i]);
    for (int axis = 0; axis < d; ++axis) {
      const GridArm& ap = grid.arms[i][2 * axis];
      const GridArm& am = grid.arms[i][2 * axis + 1];
      double up = arm_value(i, 2 * axis);
      double um = arm_value(i, 2 * axis + 1);
      double u0 = sol.values[i];
      if (mode == ProbeMode::gradient) {
        double du = (up - um) / (ap.delta + am.delta);
        double denom = 1.0 + std::abs(psi_grad[axis]) / std::sqrt(std::max(psi, 1e-300));
        rep.n_hat = std::max(rep.n_hat, std::abs(du) / denom);
      } else {
        double d2u = 2.0 * ((up - u0) / ap.delta + (um - u0) / am.delta) / (ap.delta + am.delta);
        double denom = 1.0 + psi_grad[axis] * psi_grad[axis] / std::max(psi, 1e-300) +
                       1.0 / std::max(psi, 1e-300);
        rep.n_hat = std::max(rep.n_hat, std::abs(d2u) / denom);
      }
    }
  }
  return rep;
}

}  // namespace hess
