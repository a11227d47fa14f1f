#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hessian/solver.hpp"

namespace hess {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(n_paths)
  int n_paths = 0;
  double dt = 0.0;
  long censored_paths = 0;  // hit the step cap before exiting
  std::string policy;       // descriptor
};

/// Control policy for the simulated diffusion: a fixed control index, or the
/// argmin policy of a grid solution looked up at the nearest interior node.
struct McPolicy {
  const ControlSet* controls = nullptr;
  int constant_index = -1;
  const Grid* grid = nullptr;
  const GridSolution* solution = nullptr;
};
McPolicy constant_policy(const ControlSet& controls, int index);
McPolicy grid_policy(const ControlSet& controls, const Grid& grid, const GridSolution& sol);

/// Monte Carlo estimate of the value function at x: Euler-Maruyama paths
/// x' = x + sqrt(2 a) sqrt(dt) xi, first-exit detection by the sign of rho
/// with bisection to |rho| <= 1e-10, running cost -h f by left-endpoint
/// quadrature, boundary payoff phi at the exit point. Deterministic per
/// (seed, path index) and independent of the thread count.
McEstimate mc_value(const DirichletProblem& prob, const std::vector<double>& x,
                    const McPolicy& policy, int n_paths, double dt, uint64_t seed,
                    int threads = 1, long max_steps = 10000000);

}  // namespace hess
