#include "hessian/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hessian/errors.hpp"
#include "hessian/rng.hpp"
#include "hessian/spectral.hpp"

namespace hess {

ControlCoefficients coefficients(const HessianOperator& f, const SymMatrix& alpha) {
  SymMatrix g = gradient(f, alpha);
  double tr = g.trace();
  if (tr <= 1e-12)
    throw degenerate_control_error("coefficients: gradient trace " + std::to_string(tr) +
                                   " is not positive");
  ControlCoefficients out;
  out.a = g * (1.0 / tr);
  // Operators realized from a complex one carry the Wirtinger factor: the
  // complex running weight l = 1/G_(I) must appear as h = 2l so that the
  // trace-1 real residual is twice the complex Bellman residual. Since
  // tr(grad) = 2 G_(I) for the realized gradient convention, h = 4/tr.
  out.h = (f.kind == HessianOperator::Kind::lifted) ? 4.0 / tr : 1.0 / tr;
  return out;
}

double bellman_residual(const ControlSet& controls, const SymMatrix& gamma, double c) {
  if (controls.coeffs.empty()) throw std::invalid_argument("bellman_residual: empty control set");
  double best = std::numeric_limits<double>::infinity();
  for (const ControlCoefficients& cc : controls.coeffs)
    best = std::min(best, cc.a.dot(gamma) - cc.h * c);
  return best;
}

double shift_to_level(const HessianOperator& f, const SymMatrix& gamma, double c) {
  if (c < 0.0) throw std::invalid_argument("shift_to_level: negative level");
  double t_cone = -cone_margin(f, gamma);
  if (c == 0.0) return t_cone;
  // F(gamma + tI) grows monotonically from 0 at t_cone; bracket then bisect.
  auto value_at = [&](double t) {
    return evaluate(f, gamma.plus_scaled_identity(std::max(t, t_cone)));
  };
  double lo = t_cone, hi = t_cone + 1.0;
  int guard = 0;
  while (value_at(hi) < c) {
    lo = hi;
    hi = t_cone + 2.0 * (hi - t_cone);
    if (++guard > 200)
      throw std::runtime_error("shift_to_level: bracketing failed (unbounded level?)");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-14 * (1.0 + std::abs(mid))) break;
    if (value_at(mid) < c)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

EquivalenceReport verify_equivalence(const HessianOperator& f, const ControlSet& controls,
                                     const SymMatrix& gamma, double c, double tol) {
  EquivalenceReport r;
  r.residual = bellman_residual(controls, gamma, c);
  r.t1_oracle = shift_to_level(f, gamma, c);
  r.pass = std::abs(r.residual - (-r.t1_oracle)) <= tol;
  return r;
}

ControlSet control_grid(const HessianOperator& f, const ControlGridSpec& spec) {
  if (spec.n_rays < 0 || spec.n_orthogonal < 0)
    throw std::invalid_argument("control_grid: negative counts");
  int d = f.dim;
  ControlSet set;
  if (spec.include_identity) {
    SymMatrix id = SymMatrix::identity(d) * (1.0 / d);
    set.points.push_back(id);
    set.coeffs.push_back(coefficients(f, id));
    set.includes_identity = true;
  }

  auto eng = make_engine(spec.seed, 0xC0117801);
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
    // frame conjugation leaves the cone test invariant; check the ray once
    if (cone_margin(f, SymMatrix::diagonal(w)) < spec.margin) continue;
    ++accepted_rays;
    for (int k = 0; k < frames; ++k) {
      SymMatrix alpha = SymMatrix::conjugated_diagonal(haar_orthogonal(eng, d), w);
      try {
        ControlCoefficients cc = coefficients(f, alpha);
        set.points.push_back(alpha);
        set.coeffs.push_back(std::move(cc));
      } catch (const non_differentiable_error&) {
        // eigenvalue crossing for a minimal-eigenvalue kind: not in the
        // differentiable part of the cone, so not an admissible control
      }
    }
  }
  if (set.points.empty())
    throw std::runtime_error("control_grid: no control survived the margin filter");
  return set;
}

}  // namespace hess
