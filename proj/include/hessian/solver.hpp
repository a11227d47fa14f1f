#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hessian/bellman.hpp"
#include "hessian/fields.hpp"
#include "hessian/geometry.hpp"
#include "hessian/grid.hpp"
#include "hessian/operators.hpp"

namespace hess {

/// F(u_xx) = f in D, u = phi on the boundary, posed with a 1-homogeneous F.
struct DirichletProblem {
  HessianOperator op;
  DomainGeometry dom;
  Field f;
  Field phi;
  std::optional<double> quasi_convexity_K;  // recorded metadata, not enforced
};

/// Sampled sanity checks of the problem data (f >= 0, finite fields).
void validate_problem(const DirichletProblem& prob, int n_samples = 256, uint64_t seed = 1);

struct GridSolution {
  std::vector<double> values;  // per interior node
  std::vector<int> policy;     // argmin control index per node
  double residual_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // inf-norm after each outer step
};

struct SolveOptions {
  double tol = 1e-10;    // outer Bellman-residual inf-norm target
  int max_outer = 100;
  int max_inner_sweeps = 40000;  // Gauss-Seidel sweeps per frozen policy
};

/// Howard policy iteration: alternate per-node argmin over the control set
/// (ties to the lowest index) with Gauss-Seidel solves of the policy-frozen
/// linear system to tol/10.
GridSolution policy_iteration(const DirichletProblem& prob, const Grid& grid,
                              const ControlSet& controls, const SolveOptions& opt = {});

enum class ProbeMode { bound0, gradient, second };

struct ProbeReport {
  ProbeMode mode = ProbeMode::bound0;
  bool pass = true;           // bound0 only
  double n_hat = 0.0;         // gradient / second: fitted constant
  double worst_violation = 0.0;  // bound0: largest exceedance (<= 0 when pass)
};

/// Probes of the three a-priori estimates on the discrete solution, with the
/// certified barrier psi = -C rho as weight:
///  - bound0:  |u| <= sup|phi| + (1/F(I)) sup|f| psi + 10h at every node
///  - gradient: N1 = max |du/dxi| / (1 + |psi_xi| / sqrt(psi))
///  - second:   N2 = max |d2u/dxi2| / (1 + psi_xi^2/psi + 1/psi)
ProbeReport regularity_probe(const DirichletProblem& prob, const Grid& grid,
                             const GridSolution& sol, const BarrierCertificate& cert,
                             ProbeMode mode);

}  // namespace hess
