#pragma once

#include "hessian/bellman.hpp"
#include "hessian/fields.hpp"
#include "hessian/geometry.hpp"
#include "hessian/operators.hpp"
#include "hessian/solver.hpp"

namespace hess {

/// G(u_zzbar) = f on a domain in C^d (stored realified), u = phi on the
/// boundary; G must have complex realm.
struct ComplexProblem {
  HessianOperator op;
  DomainGeometry dom;  // realm complex, realified dimension 2d
  Field f;
  Field phi;
};

/// The equivalent real problem on R^{2d}: operator F(alpha) = G applied to
/// the Hermitian part of the block structure, same domain and fields.
struct RealizedProblem {
  DirichletProblem real;
};

RealizedProblem lift(const ComplexProblem& prob);

/// Complex control coefficients: b = G_theta / tr G_theta (PSD Hermitian,
/// trace 1), l = 1 / tr G_theta (the complex running weight).
struct ComplexCoefficients {
  HermMatrix b;
  double l = 0.0;
};
ComplexCoefficients complex_coefficients(const HessianOperator& g_complex, const HermMatrix& beta);

/// All factor conventions of the realification in one place:
///  - embedding doubles the trace: tr Phi(beta) = 2 tr beta
///  - the realized gradient is the embedded complex gradient, so the
///    paper-normalized diffusion a = Phi(b)/4 = F_gamma / (2 tr F_gamma)
///    carries trace 1/2, and the trace-1 control convention of the Bellman
///    layer is exactly 2a with running weight h = 2l.
SymMatrix realized_diffusion(const HessianOperator& lifted_f, const SymMatrix& alpha);

/// Trace-1 real control representing a Hermitian control direction.
SymMatrix embed_control(const HermMatrix& beta);

/// Control grid drawn in Hermitian space and embedded; real-orthogonal
/// sampling would leave the embedded cone, so only the unitary orbit is used.
ControlSet lifted_control_grid(const HessianOperator& lifted_f, const ControlGridSpec& spec);

/// u_zzbar recovered from a realified Hessian (half the Hermitian part of
/// the block structure -- the Wirtinger quarter-sum identity).
HermMatrix complex_hessian_from_real(const SymMatrix& v_xx);

}  // namespace hess
