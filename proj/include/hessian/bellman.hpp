#pragma once

#include <cstdint>
#include <vector>

#include "hessian/linalg.hpp"
#include "hessian/operators.hpp"

namespace hess {

/// The pair (a, h) attached to one control: normalized-gradient diffusion
/// matrix (PSD, trace 1) and positive running-cost weight.
struct ControlCoefficients {
  SymMatrix a;
  double h = 0.0;
};

/// Finite discretization of the differentiable part of the cone, with
/// precomputed coefficients per control.
struct ControlSet {
  std::vector<SymMatrix> points;  // trace-1 controls, strictly inside the cone
  std::vector<ControlCoefficients> coeffs;
  bool includes_identity = false;
};

struct ControlGridSpec {
  int n_rays = 64;         // eigenvalue vectors drawn
  int n_orthogonal = 1;    // orthogonal frames per eigenvalue vector
  double margin = 1e-6;    // required cone margin of accepted controls
  bool include_identity = true;
  double lambda_floor = 0.0;  // lower endpoint of the eigenvalue draw
  uint64_t seed = 1;
};

/// a = grad F / tr(grad F), h = 1 / tr(grad F) (with the factor-4 running
/// weight bookkeeping for operators realized from complex ones).
/// Throws degenerate_control_error when the gradient trace vanishes.
ControlCoefficients coefficients(const HessianOperator& f, const SymMatrix& alpha);

/// min over the control set of tr(a * gamma) - h * c.
double bellman_residual(const ControlSet& controls, const SymMatrix& gamma, double c);

/// The scalar t1 >= -margin(gamma) with F(gamma + t1 I) = c, by bisection.
/// For c = 0 this is the shift that puts gamma + t1 I on the cone boundary.
double shift_to_level(const HessianOperator& f, const SymMatrix& gamma, double c);

struct EquivalenceReport {
  double residual = 0.0;
  double t1_oracle = 0.0;
  bool pass = false;
};

/// Checks the Bellman reformulation against the shift construction:
/// the control-set infimum should equal -t1 within tol.
EquivalenceReport verify_equivalence(const HessianOperator& f, const ControlSet& controls,
                                     const SymMatrix& gamma, double c, double tol);

/// Random trace-1 controls: eigenvalue vectors drawn uniformly from
/// [lambda_floor, 1]^d and normalized, conjugated by Haar-random frames,
/// filtered by the cone-margin test. Deterministic per seed.
ControlSet control_grid(const HessianOperator& f, const ControlGridSpec& spec);

}  // namespace hess
