#include "hessian/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hessian/errors.hpp"
#include "hessian/spectral.hpp"

namespace hess {

namespace {

void check_point(const DomainGeometry& dom, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != dom.dim)
    throw std::invalid_argument("geometry: point dimension mismatch");
}

double poly_term(const Shape::Term& t, const std::vector<double>& x) {
  double v = t.coeff;
  for (size_t i = 0; i < x.size(); ++i)
    for (int e = 0; e < t.expo[i]; ++e) v *= x[i];
  return v;
}

double monomial_deriv(double x, int e, int order) {
  // d^order/dx^order of x^e
  if (order > e) return 0.0;
  double c = 1.0;
  for (int j = 0; j < order; ++j) c *= e - j;
  double v = c;
  for (int j = 0; j < e - order; ++j) v *= x;
  return v;
}

}  // namespace

DomainGeometry make_ball(const std::vector<double>& center, double radius, Realm realm) {
  if (radius <= 0.0) throw std::invalid_argument("make_ball: radius must be positive");
  DomainGeometry dom;
  dom.shape.kind = Shape::Kind::ball;
  dom.shape.center = center;
  dom.shape.radius = radius;
  dom.dim = static_cast<int>(center.size());
  dom.realm = realm;
  if (realm == Realm::complex_case && dom.dim % 2 != 0)
    throw std::invalid_argument("make_ball: complex realm needs even realified dimension");
  dom.box_lo.resize(dom.dim);
  dom.box_hi.resize(dom.dim);
  for (int i = 0; i < dom.dim; ++i) {
    dom.box_lo[i] = center[i] - 1.05 * radius;
    dom.box_hi[i] = center[i] + 1.05 * radius;
  }
  return dom;
}

DomainGeometry make_ellipsoid(const std::vector<double>& center,
                              const std::vector<double>& semi_axes) {
  if (center.size() != semi_axes.size())
    throw std::invalid_argument("make_ellipsoid: center/axes size mismatch");
  for (double a : semi_axes)
    if (a <= 0.0) throw std::invalid_argument("make_ellipsoid: axes must be positive");
  DomainGeometry dom;
  dom.shape.kind = Shape::Kind::ellipsoid;
  dom.shape.center = center;
  dom.shape.semi_axes = semi_axes;
  dom.dim = static_cast<int>(center.size());
  dom.box_lo.resize(dom.dim);
  dom.box_hi.resize(dom.dim);
  for (int i = 0; i < dom.dim; ++i) {
    dom.box_lo[i] = center[i] - 1.05 * semi_axes[i];
    dom.box_hi[i] = center[i] + 1.05 * semi_axes[i];
  }
  return dom;
}

DomainGeometry make_poly_domain(int dim, const std::vector<Shape::Term>& terms,
                                const std::vector<double>& box_lo,
                                const std::vector<double>& box_hi, Realm realm) {
  DomainGeometry dom;
  dom.shape.kind = Shape::Kind::poly_level;
  dom.shape.terms = terms;
  for (const Shape::Term& t : dom.shape.terms)
    if (static_cast<int>(t.expo.size()) != dim)
      throw std::invalid_argument("make_poly_domain: exponent vector size mismatch");
  dom.dim = dim;
  dom.realm = realm;
  if (realm == Realm::complex_case && dim % 2 != 0)
    throw std::invalid_argument("make_poly_domain: complex realm needs even realified dimension");
  dom.box_lo = box_lo;
  dom.box_hi = box_hi;
  if (rho(dom, domain_center(dom)) >= 0.0)
    throw std::invalid_argument("make_poly_domain: rho(center) must be negative");
  return dom;
}

double rho(const DomainGeometry& dom, const std::vector<double>& x) {
  check_point(dom, x);
  switch (dom.shape.kind) {
    case Shape::Kind::ball: {
      double s = 0.0;
      for (int i = 0; i < dom.dim; ++i) {
        double d = x[i] - dom.shape.center[i];
        s += d * d;
      }
      return 0.5 * (s - dom.shape.radius * dom.shape.radius);
    }
    case Shape::Kind::ellipsoid: {
      double s = 0.0;
      for (int i = 0; i < dom.dim; ++i) {
        double d = (x[i] - dom.shape.center[i]) / dom.shape.semi_axes[i];
        s += d * d;
      }
      return 0.5 * (s - 1.0);
    }
    case Shape::Kind::poly_level: {
      double s = 0.0;
      for (const Shape::Term& t : dom.shape.terms) s += poly_term(t, x);
      return s;
    }
  }
  return 0.0;
}

std::vector<double> rho_grad(const DomainGeometry& dom, const std::vector<double>& x) {
  check_point(dom, x);
  std::vector<double> g(dom.dim, 0.0);
  switch (dom.shape.kind) {
    case Shape::Kind::ball:
      for (int i = 0; i < dom.dim; ++i) g[i] = x[i] - dom.shape.center[i];
      break;
    case Shape::Kind::ellipsoid:
      for (int i = 0; i < dom.dim; ++i) {
        double a = dom.shape.semi_axes[i];
        g[i] = (x[i] - dom.shape.center[i]) / (a * a);
      }
      break;
    case Shape::Kind::poly_level:
      for (const Shape::Term& t : dom.shape.terms)
        for (int i = 0; i < dom.dim; ++i) {
          double v = t.coeff * monomial_deriv(x[i], t.expo[i], 1);
          if (v == 0.0) continue;
          for (int j = 0; j < dom.dim; ++j)
            if (j != i) v *= monomial_deriv(x[j], t.expo[j], 0);
          g[i] += v;
        }
      break;
  }
  return g;
}

SymMatrix rho_hess(const DomainGeometry& dom, const std::vector<double>& x) {
  check_point(dom, x);
  SymMatrix h(dom.dim);
  switch (dom.shape.kind) {
    case Shape::Kind::ball:
      return SymMatrix::identity(dom.dim);
    case Shape::Kind::ellipsoid:
      for (int i = 0; i < dom.dim; ++i) {
        double a = dom.shape.semi_axes[i];
        h.set(i, i, 1.0 / (a * a));
      }
      return h;
    case Shape::Kind::poly_level:
      for (const Shape::Term& t : dom.shape.terms)
        for (int i = 0; i < dom.dim; ++i)
          for (int j = i; j < dom.dim; ++j) {
            double v = t.coeff;
            if (i == j) {
              v *= monomial_deriv(x[i], t.expo[i], 2);
            } else {
              v *= monomial_deriv(x[i], t.expo[i], 1) * monomial_deriv(x[j], t.expo[j], 1);
            }
            if (v == 0.0) continue;
            for (int k = 0; k < dom.dim; ++k)
              if (k != i && k != j) v *= monomial_deriv(x[k], t.expo[k], 0);
            h.add(i, j, v);
          }
      return h;
  }
  return h;
}

std::vector<double> domain_center(const DomainGeometry& dom) {
  if (dom.shape.kind == Shape::Kind::poly_level) return std::vector<double>(dom.dim, 0.0);
  return dom.shape.center;
}

double domain_diameter_bound(const DomainGeometry& dom) {
  double s = 0.0;
  for (int i = 0; i < dom.dim; ++i) {
    double d = dom.box_hi[i] - dom.box_lo[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<double> boundary_point(const DomainGeometry& dom,
                                   const std::vector<double>& direction) {
  check_point(dom, direction);
  double nd = norm2(direction);
  if (nd <= 0.0) throw std::invalid_argument("boundary_point: zero direction");
  std::vector<double> c = domain_center(dom);
  if (rho(dom, c) >= 0.0) throw std::invalid_argument("boundary_point: center not interior");
  auto at = [&](double t) {
    std::vector<double> x(dom.dim);
    for (int i = 0; i < dom.dim; ++i) x[i] = c[i] + t * direction[i] / nd;
    return x;
  };
  double t_max = domain_diameter_bound(dom) + 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi < t_max && rho(dom, at(hi)) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  if (rho(dom, at(hi)) < 0.0)
    throw std::runtime_error("boundary_point: ray did not leave the domain (unbounded shape?)");
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (rho(dom, at(mid)) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return at(0.5 * (lo + hi));
}

std::vector<double> random_direction(std::mt19937_64& eng, int dim) {
  for (;;) {
    std::vector<double> v = gaussian_vector(eng, dim);
    double n = norm2(v);
    if (n < 1e-12) continue;
    for (double& x : v) x /= n;
    return v;
  }
}

BoundaryFrame second_fundamental_form(const DomainGeometry& dom, const std::vector<double>& x) {
  check_point(dom, x);
  int d = dom.dim;
  BoundaryFrame bf;
  bf.point = x;
  std::vector<double> g = rho_grad(dom, x);
  bf.grad_norm = norm2(g);
  if (bf.grad_norm < 1e-12)
    throw std::invalid_argument("second_fundamental_form: vanishing boundary gradient");
  // first-order distance estimate |rho| / |rho_x|, relative to the point size
  if (std::abs(rho(dom, x)) / bf.grad_norm > 1e-8 * (1.0 + norm2(x)))
    throw std::invalid_argument("second_fundamental_form: point is not on the boundary");
  bf.normal.resize(d);
  for (int i = 0; i < d; ++i) bf.normal[i] = g[i] / bf.grad_norm;

  // Householder reflection sending e_{d-1} to +/- normal; its remaining
  // columns are an orthonormal tangent frame.
  std::vector<double> v = bf.normal;
  double sgn = (v[d - 1] >= 0.0) ? 1.0 : -1.0;
  v[d - 1] += sgn;
  double vv = dot(v, v);
  Matrix frame(d, d - 1);
  for (int col = 0; col < d - 1; ++col) {
    for (int i = 0; i < d; ++i) {
      double e = (i == col) ? 1.0 : 0.0;
      frame(i, col) = e - 2.0 * v[i] * v[col] / vv;
    }
  }
  bf.tangent_frame = frame;

  SymMatrix hx = rho_hess(dom, x);
  SymMatrix ii(d - 1);
  for (int a = 0; a < d - 1; ++a) {
    std::vector<double> hta = hx.apply(frame.column(a));
    for (int b = a; b < d - 1; ++b) ii.set(a, b, dot(hta, frame.column(b)) / bf.grad_norm);
  }
  bf.ii = ii;
  return bf;
}

SymMatrix embed_with_normal(const BoundaryFrame& bf, double t) {
  int d = static_cast<int>(bf.normal.size());
  SymMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double s = t * bf.normal[i] * bf.normal[j];
      for (int a = 0; a < d - 1; ++a)
        for (int b = 0; b < d - 1; ++b)
          s += bf.ii(a, b) * bf.tangent_frame(i, a) * bf.tangent_frame(j, b);
      m.set(i, j, s);
    }
  return m;
}

std::vector<cplx> rho_complex_grad(const DomainGeometry& dom, const std::vector<double>& x) {
  if (dom.realm != Realm::complex_case)
    throw std::invalid_argument("rho_complex_grad: real-realm domain");
  int d = dom.dim / 2;
  std::vector<double> g = rho_grad(dom, x);
  std::vector<cplx> gz(d);
  for (int i = 0; i < d; ++i) gz[i] = 0.5 * cplx(g[i], -g[d + i]);
  return gz;
}

HermMatrix rho_complex_hess(const DomainGeometry& dom, const std::vector<double>& x) {
  if (dom.realm != Realm::complex_case)
    throw std::invalid_argument("rho_complex_hess: real-realm domain");
  // rho_{z_i zbar_j} = (1/4)[rho_{x_i x_j} + rho_{y_i y_j}
  //                          + i (rho_{x_i y_j} - rho_{y_i x_j})],
  // which is half the Hermitian projection of the real Hessian.
  return phi_project(rho_hess(dom, x)) * 0.5;
}

LeviFrame levi_form(const DomainGeometry& dom, const std::vector<double>& x) {
  if (dom.realm != Realm::complex_case)
    throw std::invalid_argument("levi_form: real-realm domain");
  if (std::abs(rho(dom, x)) / std::max(norm2(rho_grad(dom, x)), 1e-12) >
      1e-8 * (1.0 + norm2(x)))
    throw std::invalid_argument("levi_form: point is not on the boundary");
  int d = dom.dim / 2;
  LeviFrame lf;
  lf.point = x;
  std::vector<cplx> gz = rho_complex_grad(dom, x);
  double gn = 0.0;
  for (cplx z : gz) gn += std::norm(z);
  gn = std::sqrt(gn);
  lf.grad_norm = gn;
  if (gn < 1e-12) throw std::invalid_argument("levi_form: vanishing boundary gradient");
  // Complex normal: the direction conj(rho_z), so tangency of w reads
  // sum_i rho_{z_i} w_i = 0.
  lf.normal.resize(d);
  for (int i = 0; i < d; ++i) lf.normal[i] = std::conj(gz[i]) / gn;

  // Complex Householder with last column proportional to the normal.
  std::vector<cplx> v = lf.normal;
  cplx phase = (std::abs(v[d - 1]) > 1e-14) ? v[d - 1] / std::abs(v[d - 1]) : cplx(1.0, 0.0);
  v[d - 1] += phase;
  double vv = 0.0;
  for (cplx z : v) vv += std::norm(z);
  CMatrix frame(d, d - 1);
  for (int col = 0; col < d - 1; ++col)
    for (int i = 0; i < d; ++i) {
      cplx e = (i == col) ? 1.0 : 0.0;
      frame(i, col) = e - 2.0 * v[i] * std::conj(v[col]) / vv;
    }
  lf.tangent_frame = frame;

  HermMatrix hz = rho_complex_hess(dom, x);
  HermMatrix levi(d - 1);
  for (int a = 0; a < d - 1; ++a)
    for (int b = a; b < d - 1; ++b) {
      cplx s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s += std::conj(frame(i, a)) * hz(i, j) * frame(j, b);
      levi.set(a, b, s / gn);
    }
  lf.levi = levi;
  return lf;
}

HermMatrix embed_with_normal(const LeviFrame& lf, double t) {
  int d = static_cast<int>(lf.normal.size());
  HermMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      cplx s = t * lf.normal[i] * std::conj(lf.normal[j]);
      for (int a = 0; a < d - 1; ++a)
        for (int b = 0; b < d - 1; ++b)
          s += lf.levi(a, b) * lf.tangent_frame(i, a) * std::conj(lf.tangent_frame(j, b));
      m.set(i, j, s);
    }
  return m;
}

namespace {

// Underlying cone-defining polynomial of an operator whose cone equals the
// cone of its base (root / quotient / minimal-eigenvalue wrappers).
const HessianOperator* cone_polynomial(const HessianOperator& f) {
  const HessianOperator* p = &f;
  while (p->kind == HessianOperator::Kind::normalized_root ||
         p->kind == HessianOperator::Kind::quotient ||
         p->kind == HessianOperator::Kind::min_eigenvalue)
    p = &p->parts[0];
  if (p->kind == HessianOperator::Kind::polynomial) return p;
  return nullptr;
}

template <class MatrixT>
bool direct_witness(const HessianOperator& f, const MatrixT& base_embed_zero,
                    const MatrixT& normal_rank_one, double t_max, double& witness) {
  for (double t = 1.0; t <= t_max; t *= 2.0) {
    MatrixT m = base_embed_zero + normal_rank_one * t;
    try {
      if (in_cone(f, m).cls == ConeClass::inside) {
        witness = t;
        return true;
      }
    } catch (const hyperbolicity_violation&) {
      // numerically coincident characteristic roots: the matrix sits on the
      // cone boundary at this scale, which is not strict membership
    }
  }
  return false;
}

// Strict positivity of sigma_{k-1}(II), at the scale-aware tolerance the cone
// classifier uses, so the two tests agree at degenerate boundary points.
template <class MatrixT>
bool sigma_shortcut_positive(const HessianOperator& shortcut_op, const MatrixT& second_form) {
  double tol = std::pow(1e-9 * (1.0 + second_form.max_abs()), shortcut_op.order);
  return evaluate(shortcut_op, second_form) > tol;
}

// Boundary samples: random ray directions plus the 2d coordinate-axis rays,
// so axis-symmetric flat spots (e.g. smoothed-box face centers) are always
// probed rather than only approached with probability one.
std::vector<std::vector<double>> sample_directions(std::mt19937_64& eng, int dim, int n_random) {
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < dim; ++i)
    for (double s : {1.0, -1.0}) {
      std::vector<double> e(dim, 0.0);
      e[i] = s;
      dirs.push_back(std::move(e));
    }
  for (int s = 0; s < n_random; ++s) dirs.push_back(random_direction(eng, dim));
  return dirs;
}

}  // namespace

ConvexityReport check_strict_gamma_convexity(const DomainGeometry& dom, const HessianOperator& f,
                                             int n_boundary_samples, double t_max,
                                             uint64_t seed) {
  if (f.dim != dom.dim)
    throw std::invalid_argument("check_strict_gamma_convexity: operator/domain dim mismatch");
  const HessianOperator* poly = cone_polynomial(f);
  bool sigma_kind = poly && poly->family == HessianOperator::Family::sigma;
  HessianOperator shortcut_op;
  if (sigma_kind && poly->order >= 2) shortcut_op = sigma_operator(poly->order - 1, dom.dim - 1);

  ConvexityReport rep;
  rep.pass = true;
  if (sigma_kind) rep.sigma_shortcut_agrees = true;

  auto eng = make_engine(seed, 0x6E0);
  std::vector<std::vector<double>> dirs = sample_directions(eng, dom.dim, n_boundary_samples);
  rep.n_samples = static_cast<int>(dirs.size());
  double worst_t = 0.0;
  for (const std::vector<double>& dir : dirs) {
    std::vector<double> x = boundary_point(dom, dir);
    BoundaryFrame bf = second_fundamental_form(dom, x);

    SymMatrix embedded = embed_with_normal(bf, 0.0);
    SymMatrix pn(dom.dim);
    for (int i = 0; i < dom.dim; ++i)
      for (int j = i; j < dom.dim; ++j) pn.set(i, j, bf.normal[i] * bf.normal[j]);
    double t_here = 0.0;
    bool ok = direct_witness(f, embedded, pn, t_max, t_here);

    if (sigma_kind) {
      bool shortcut_ok = (poly->order < 2) || sigma_shortcut_positive(shortcut_op, bf.ii);
      if (shortcut_ok != ok) rep.sigma_shortcut_agrees = false;
    }
    if (!ok) {
      if (rep.pass || rep.worst_point.empty()) rep.worst_point = x;
      rep.pass = false;
    } else {
      worst_t = std::max(worst_t, t_here);
    }
  }
  rep.witness_t = worst_t;
  return rep;
}

ConvexityReport check_strict_theta_pseudoconvexity(const DomainGeometry& dom,
                                                   const HessianOperator& g_complex,
                                                   int n_boundary_samples, double t_max,
                                                   uint64_t seed) {
  if (dom.realm != Realm::complex_case)
    throw std::invalid_argument("check_strict_theta_pseudoconvexity: real-realm domain");
  int d = dom.dim / 2;
  if (g_complex.dim != d)
    throw std::invalid_argument("check_strict_theta_pseudoconvexity: operator dim mismatch");
  const HessianOperator* poly = cone_polynomial(g_complex);
  bool sigma_kind = poly && poly->family == HessianOperator::Family::sigma;
  bool mu_kind = poly && poly->family == HessianOperator::Family::mu;
  HessianOperator shortcut_op;
  if (sigma_kind && poly->order >= 2)
    shortcut_op = sigma_operator(poly->order - 1, d - 1, Realm::complex_case);

  ConvexityReport rep;
  rep.pass = true;
  if (sigma_kind) rep.sigma_shortcut_agrees = true;
  if (mu_kind) rep.mu_shortcut_agrees = true;

  auto eng = make_engine(seed, 0x6E1);
  std::vector<std::vector<double>> dirs = sample_directions(eng, dom.dim, n_boundary_samples);
  rep.n_samples = static_cast<int>(dirs.size());
  double worst_t = 0.0;
  for (const std::vector<double>& dir : dirs) {
    std::vector<double> x = boundary_point(dom, dir);
    LeviFrame lf = levi_form(dom, x);

    HermMatrix embedded = embed_with_normal(lf, 0.0);
    HermMatrix pn(d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) pn.set(i, j, lf.normal[i] * std::conj(lf.normal[j]));
    double t_here = 0.0;
    bool ok = direct_witness(g_complex, embedded, pn, t_max, t_here);

    if (sigma_kind) {
      bool shortcut_ok = (poly->order < 2) || sigma_shortcut_positive(shortcut_op, lf.levi);
      if (shortcut_ok != ok) rep.sigma_shortcut_agrees = false;
    }
    if (mu_kind) {
      // kappa_1 + ... + kappa_k > 0 over ascending Levi curvatures.
      std::vector<double> kappa = eigenvalues(lf.levi);
      double sum = 0.0;
      int k = std::min<int>(poly->order, static_cast<int>(kappa.size()));
      for (int i = 0; i < k; ++i) sum += kappa[i];
      if ((sum > 0.0) != ok) rep.mu_shortcut_agrees = false;
    }
    if (!ok) {
      if (rep.pass || rep.worst_point.empty()) rep.worst_point = x;
      rep.pass = false;
    } else {
      worst_t = std::max(worst_t, t_here);
    }
  }
  rep.witness_t = worst_t;
  return rep;
}

BarrierCertificate build_barrier(const DomainGeometry& dom, const ControlSet& controls,
                                 int n_interior_samples, int n_boundary_samples, uint64_t seed) {
  if (controls.coeffs.empty()) throw std::invalid_argument("build_barrier: empty control set");
  auto eng = make_engine(seed, 0xBA881E8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c = domain_center(dom);

  // Since psi_xx = -C rho_xx, the barrier bound sup_a tr(a psi_xx) <= -1
  // is -C times the smallest tr(a rho_xx) over controls: track that minimum
  // over interior samples, and the smallest |rho_x| over boundary samples.
  double min_inf = std::numeric_limits<double>::infinity();
  double min_boundary_grad = std::numeric_limits<double>::infinity();
  auto record = [&](const std::vector<double>& x) {
    if (rho(dom, x) >= 0.0) throw certification_failure("build_barrier: sample left the domain");
    SymMatrix hx = rho_hess(dom, x);
    double inf = std::numeric_limits<double>::infinity();
    for (const ControlCoefficients& cc : controls.coeffs) inf = std::min(inf, cc.a.dot(hx));
    min_inf = std::min(min_inf, inf);
  };
  record(c);
  for (int s = 0; s < n_interior_samples; ++s) {
    std::vector<double> b = boundary_point(dom, random_direction(eng, dom.dim));
    double frac = 0.999 * std::pow(u(eng), 1.0 / dom.dim);
    std::vector<double> x(dom.dim);
    for (int i = 0; i < dom.dim; ++i) x[i] = c[i] + frac * (b[i] - c[i]);
    record(x);
  }
  for (int s = 0; s < n_boundary_samples; ++s) {
    std::vector<double> b = boundary_point(dom, random_direction(eng, dom.dim));
    min_boundary_grad = std::min(min_boundary_grad, norm2(rho_grad(dom, b)));
  }
  if (min_boundary_grad < 1e-6)
    throw certification_failure("build_barrier: boundary gradient below 1e-6");

  const double c_cap = 4294967296.0;  // 2^32
  BarrierCertificate cert;
  for (double C = 1.0;; C *= 2.0) {
    if (C > c_cap)
      throw certification_failure(
          "build_barrier: no certificate below C = 2^32 (domain likely not strictly convex "
          "for this cone)");
    double worst = -C * min_inf;  // sup over controls and samples of tr(a psi_xx)
    if (worst <= -1.0 && C * min_boundary_grad >= 1.0) {
      cert.C = C;
      cert.worst_residual = worst;
      break;
    }
  }
  double diam = domain_diameter_bound(dom);
  cert.epsilon = 0.1 / (diam * diam);
  cert.sample_count = n_interior_samples + n_boundary_samples + 1;
  return cert;
}

double barrier_value(const DomainGeometry& dom, const BarrierCertificate& cert,
                     const std::vector<double>& x) {
  return -cert.C * rho(dom, x);
}

std::vector<double> barrier_grad(const DomainGeometry& dom, const BarrierCertificate& cert,
                                 const std::vector<double>& x) {
  std::vector<double> g = rho_grad(dom, x);
  for (double& v : g) v *= -cert.C;
  return g;
}

}  // namespace hess
