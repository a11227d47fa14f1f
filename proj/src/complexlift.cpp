#include "hessian/complexlift.hpp"

#include <stdexcept>
#include <string>

#include "hessian/errors.hpp"
#include "hessian/rng.hpp"
#include "hessian/spectral.hpp"

namespace hess {

RealizedProblem lift(const ComplexProblem& prob) {
  if (prob.op.realm != Realm::complex_case)
    throw std::invalid_argument("lift: operator does not have complex realm");
  if (prob.dom.realm != Realm::complex_case)
    throw std::invalid_argument("lift: domain does not have complex realm");
  if (prob.dom.dim != 2 * prob.op.dim)
    throw std::invalid_argument("lift: realified domain dimension must be twice the operator dimension");
  RealizedProblem out;
  out.real.op = lifted_operator(prob.op);
  out.real.dom = prob.dom;
  out.real.f = prob.f;
  out.real.phi = prob.phi;
  return out;
}

ComplexCoefficients complex_coefficients(const HessianOperator& g_complex, const HermMatrix& beta) {
  if (g_complex.realm != Realm::complex_case)
    throw std::invalid_argument("complex_coefficients: operator does not have complex realm");
  HermMatrix grad = gradient(g_complex, beta);
  double tr = grad.trace();
  if (tr <= 1e-12)
    throw degenerate_control_error("complex_coefficients: gradient trace " + std::to_string(tr) +
                                   " is not positive");
  ComplexCoefficients out;
  out.b = grad * (1.0 / tr);
  out.l = 1.0 / tr;
  return out;
}

SymMatrix realized_diffusion(const HessianOperator& lifted_f, const SymMatrix& alpha) {
  if (lifted_f.kind != HessianOperator::Kind::lifted)
    throw std::invalid_argument("realized_diffusion: operator is not a lifted kind");
  SymMatrix grad = gradient(lifted_f, alpha);
  double tr = grad.trace();
  if (tr <= 1e-12)
    throw degenerate_control_error("realized_diffusion: gradient trace " + std::to_string(tr) +
                                   " is not positive");
  return grad * (1.0 / (2.0 * tr));
}

SymMatrix embed_control(const HermMatrix& beta) {
  SymMatrix alpha = phi_embed(beta);
  double tr = alpha.trace();
  if (tr <= 1e-12)
    throw degenerate_control_error("embed_control: control trace is not positive");
  return alpha * (1.0 / tr);
}

ControlSet lifted_control_grid(const HessianOperator& lifted_f, const ControlGridSpec& spec) {
  if (lifted_f.kind != HessianOperator::Kind::lifted)
    throw std::invalid_argument("lifted_control_grid: operator is not a lifted kind");
  if (spec.n_rays < 0 || spec.n_orthogonal < 0)
    throw std::invalid_argument("lifted_control_grid: negative counts");
  const HessianOperator& g = lifted_f.parts.at(0);
  int d = g.dim;

  ControlSet set;
  if (spec.include_identity) {
    SymMatrix id = SymMatrix::identity(2 * d) * (1.0 / (2 * d));
    set.points.push_back(id);
    set.coeffs.push_back(coefficients(lifted_f, id));
    set.includes_identity = true;
  }

  auto eng = make_engine(spec.seed, 0x11F7ED);
  std::uniform_real_distribution<double> u(spec.lambda_floor, 1.0);
  int frames = std::max(spec.n_orthogonal, 1);
  int attempts = 0, max_attempts = 20 * (spec.n_rays + 1) * frames + 100;
  int accepted_rays = 0;
  while (accepted_rays < spec.n_rays && attempts < max_attempts) {
    ++attempts;
    std::vector<double> w(d);
    double s = 0.0;
    for (double& x : w) {
      x = u(eng);
      s += x;
    }
    if (s <= 1e-12) continue;
    for (double& x : w) x /= s;
    // unitary conjugation leaves the cone test invariant; check the ray once
    if (cone_margin(g, HermMatrix::diagonal(w)) < spec.margin) continue;
    ++accepted_rays;
    for (int k = 0; k < frames; ++k) {
      // draw in Hermitian space and embed: a real-orthogonal conjugation of
      // an embedded control would leave the embedded subspace, so only the
      // unitary orbit is admissible
      HermMatrix beta = HermMatrix::conjugated_diagonal(haar_unitary(eng, d), w);
      SymMatrix alpha = phi_embed(beta) * 0.5;  // trace 1 since tr beta = 1
      try {
        ControlCoefficients cc = coefficients(lifted_f, alpha);
        set.points.push_back(alpha);
        set.coeffs.push_back(std::move(cc));
      } catch (const non_differentiable_error&) {
        // not in the differentiable part of the cone: skip
      }
    }
  }
  if (set.points.empty())
    throw std::runtime_error("lifted_control_grid: no control survived the margin filter");
  return set;
}

HermMatrix complex_hessian_from_real(const SymMatrix& v_xx) {
  return phi_project(v_xx) * 0.5;
}

}  // namespace hess
