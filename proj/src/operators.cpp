#include "hessian/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hessian/errors.hpp"
#include "hessian/polyroots.hpp"
#include "hessian/spectral.hpp"

namespace hess {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double falling_product(int from_excl, int count) {
  // (from_excl+1)(from_excl+2)...(from_excl+count)
  double r = 1.0;
  for (int i = 1; i <= count; ++i) r *= from_excl + i;
  return r;
}

// All k-subset sums of x, in lexicographic subset order.
std::vector<double> subset_sums(const std::vector<double>& x, int k) {
  int d = static_cast<int>(x.size());
  std::vector<double> sums;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    double s = 0.0;
    for (int i : idx) s += x[i];
    sums.push_back(s);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == d - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return sums;
}

// Elementary symmetric e_0..e_{n-1} of x with x[skip] removed, by synthetic
// division of the full e-sequence.
std::vector<double> elem_minus_one(const std::vector<double>& e, double removed, int up_to) {
  std::vector<double> out(up_to + 1);
  out[0] = 1.0;
  for (int r = 1; r <= up_to; ++r) out[r] = e[r] - removed * out[r - 1];
  return out;
}

struct VP {
  double value = 0.0;
  std::vector<double> partials;  // per matrix eigenvalue, empty unless requested
};

double tol_for(const std::vector<double>& lam) {
  double m = 0.0;
  for (double x : lam) m = std::max(m, std::abs(x));
  return 1e-9 * (1.0 + m);
}

VP eig_vp(const HessianOperator& op, const std::vector<double>& lam, bool want_partials);

// Ascending-degree coefficients of t -> H(M + tI) for a polynomial kind,
// from the closed forms (sigma: shifted elementary symmetric; mu: shifted
// subset-sum product, differentiated).
std::vector<double> garding_coeffs(const HessianOperator& op, const std::vector<double>& lam) {
  int d = op.dim;
  if (op.family == HessianOperator::Family::sigma) {
    int k = op.order;
    std::vector<double> e = elementary_symmetric(lam);
    std::vector<double> c(k + 1);
    for (int s = 0; s <= k; ++s) c[s] = op.scale * binom(d - k + s, s) * e[k - s];
    return c;
  }
  int k = op.order, j = op.deriv;
  std::vector<double> sums = subset_sums(lam, k);
  int n = static_cast<int>(sums.size());
  std::vector<double> e = elementary_symmetric(sums);
  std::vector<double> base(n + 1);
  double kp = 1.0;
  for (int r = 0; r <= n; ++r) {
    base[r] = kp * e[n - r];
    kp *= k;
  }
  std::vector<double> c(n - j + 1);
  for (int s = 0; s <= n - j; ++s) {
    double fac = 1.0;
    for (int i = s + 1; i <= s + j; ++i) fac *= i;  // (s+j)!/s!
    c[s] = op.scale * fac * base[s + j];
  }
  return c;
}

VP polynomial_vp(const HessianOperator& op, const std::vector<double>& lam, bool want_partials) {
  int d = op.dim;
  VP out;
  if (op.family == HessianOperator::Family::sigma) {
    int k = op.order;
    std::vector<double> e = elementary_symmetric(lam);
    out.value = op.scale * e[k];
    if (want_partials) {
      out.partials.resize(d);
      for (int i = 0; i < d; ++i) {
        std::vector<double> em = elem_minus_one(e, lam[i], std::max(k - 1, 0));
        out.partials[i] = (k >= 1) ? op.scale * em[k - 1] : 0.0;
      }
    }
    return out;
  }
  int k = op.order, j = op.deriv;
  std::vector<double> sums = subset_sums(lam, k);
  int n = static_cast<int>(sums.size());
  std::vector<double> e = elementary_symmetric(sums);
  double fac = 1.0;
  for (int i = 1; i <= j; ++i) fac *= i;
  double kj = std::pow(static_cast<double>(k), j);
  out.value = op.scale * fac * kj * e[n - j];
  if (want_partials) {
    out.partials.assign(d, 0.0);
    if (n - j >= 1) {
      // d e_{n-j}(S)/d lam_i = sum over subsets containing i of
      // e_{n-j-1}(S minus that subset's sum)
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      size_t which = 0;
      while (true) {
        std::vector<double> em = elem_minus_one(e, sums[which], n - j - 1);
        for (int i : idx) out.partials[i] += op.scale * fac * kj * em[n - j - 1];
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == d - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        ++which;
      }
    }
  }
  return out;
}

double min_garding_exact(const HessianOperator& poly, const std::vector<double>& lam) {
  std::vector<double> roots = real_rooted_roots(garding_coeffs(poly, lam));
  return -roots.back();
}

// Margin (classifying minimum) in eigenvalue coordinates.
double margin_vp(const HessianOperator& op, const std::vector<double>& lam) {
  switch (op.kind) {
    case HessianOperator::Kind::polynomial:
      return min_garding_exact(op, lam);
    case HessianOperator::Kind::normalized_root:
    case HessianOperator::Kind::min_eigenvalue:
      return margin_vp(op.parts[0], lam);
    case HessianOperator::Kind::quotient:
      return margin_vp(op.parts[0], lam);
    case HessianOperator::Kind::geometric_mean: {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& c : op.parts) m = std::min(m, margin_vp(c, lam));
      return m;
    }
    default:
      throw std::logic_error("margin_vp: kind handled elsewhere");
  }
}

VP eig_vp(const HessianOperator& op, const std::vector<double>& lam, bool want_partials) {
  switch (op.kind) {
    case HessianOperator::Kind::polynomial:
      return polynomial_vp(op, lam, want_partials);

    case HessianOperator::Kind::normalized_root: {
      const HessianOperator& h = op.parts[0];
      int m = degree(h);
      double mrg = margin_vp(h, lam);
      if (mrg < -tol_for(lam))
        throw cone_violation("normalized_root: matrix outside the cone closure", mrg);
      VP hv = eig_vp(h, lam, want_partials);
      VP out;
      out.value = std::pow(std::max(hv.value, 0.0), 1.0 / m);
      if (want_partials) {
        if (hv.value <= 0.0)
          throw cone_violation("normalized_root: gradient undefined on the cone boundary", mrg);
        out.partials.resize(lam.size());
        for (size_t i = 0; i < lam.size(); ++i)
          out.partials[i] = out.value / (m * hv.value) * hv.partials[i];
      }
      return out;
    }

    case HessianOperator::Kind::quotient: {
      const HessianOperator& h = op.parts[0];
      const HessianOperator& hk = op.parts[1];
      int k = op.param;
      double mrg = margin_vp(h, lam);
      if (mrg < -tol_for(lam))
        throw cone_violation("quotient: matrix outside the cone closure", mrg);
      VP hv = eig_vp(h, lam, false);
      VP hkv = eig_vp(hk, lam, false);
      VP out;
      if (hkv.value <= 0.0) {
        if (std::abs(hv.value) <= tol_for(lam))
          return out;  // 0/0 at the cone tip; value 0 by continuity
        throw cone_violation("quotient: derived polynomial non-positive", mrg);
      }
      out.value = std::pow(std::max(hv.value, 0.0) / hkv.value, 1.0 / k);
      if (want_partials) {
        if (hv.value <= 0.0)
          throw cone_violation("quotient: gradient undefined on the cone boundary", mrg);
        VP hg = eig_vp(h, lam, true);
        VP hkg = eig_vp(hk, lam, true);
        out.partials.resize(lam.size());
        for (size_t i = 0; i < lam.size(); ++i)
          out.partials[i] =
              out.value / k * (hg.partials[i] / hg.value - hkg.partials[i] / hkg.value);
      }
      return out;
    }

    case HessianOperator::Kind::min_eigenvalue: {
      const HessianOperator& h = op.parts[0];
      std::vector<double> roots = real_rooted_roots(garding_coeffs(h, lam));
      double lmin = -roots.back();
      VP out;
      out.value = lmin;
      if (want_partials) {
        if (roots.size() >= 2 && (-roots[roots.size() - 2]) - lmin < 1e-8)
          throw non_differentiable_error(
              "min_eigenvalue: minimal generalized eigenvalue is not simple");
        std::vector<double> shifted(lam);
        for (double& x : shifted) x -= lmin;
        VP hg = eig_vp(h, shifted, true);
        double tr = 0.0;
        for (double p : hg.partials) tr += p;
        if (std::abs(tr) < 1e-14)
          throw non_differentiable_error("min_eigenvalue: degenerate implicit derivative");
        out.partials.resize(lam.size());
        for (size_t i = 0; i < lam.size(); ++i) out.partials[i] = hg.partials[i] / tr;
      }
      return out;
    }

    case HessianOperator::Kind::geometric_mean: {
      size_t n = op.parts.size();
      std::vector<VP> comp(n);
      double prod = 1.0;
      for (size_t c = 0; c < n; ++c) {
        comp[c] = eig_vp(op.parts[c], lam, want_partials);
        if (comp[c].value < 0.0)
          throw cone_violation("geometric_mean: negative component value", comp[c].value);
        prod *= comp[c].value;
      }
      VP out;
      out.value = std::pow(prod, 1.0 / n);
      if (want_partials) {
        if (prod <= 0.0)
          throw cone_violation("geometric_mean: gradient undefined where a component vanishes",
                               0.0);
        out.partials.assign(lam.size(), 0.0);
        for (size_t c = 0; c < n; ++c)
          for (size_t i = 0; i < lam.size(); ++i)
            out.partials[i] += out.value / n * comp[c].partials[i] / comp[c].value;
      }
      return out;
    }

    default:
      throw std::logic_error("eig_vp: translated/lifted kinds dispatch before eigen route");
  }
}

void require_polynomial(const HessianOperator& op, const char* who) {
  if (op.kind != HessianOperator::Kind::polynomial)
    throw std::invalid_argument(std::string(who) + ": polynomial kind required");
}

ConeResult classify(double margin, double scale_tol) {
  if (std::abs(margin) <= scale_tol) return {ConeClass::boundary, margin};
  return {margin > 0.0 ? ConeClass::inside : ConeClass::outside, margin};
}

// Newton divided-difference fit through (x_i, y_i), expanded to ascending
// monomial coefficients.
std::vector<double> fit_polynomial(const std::vector<double>& x, std::vector<double> y) {
  int n = static_cast<int>(x.size());
  for (int level = 1; level < n; ++level)
    for (int i = n - 1; i >= level; --i) y[i] = (y[i] - y[i - 1]) / (x[i] - x[i - level]);
  std::vector<double> coeffs{y[n - 1]};
  for (int i = n - 2; i >= 0; --i) {
    // coeffs <- coeffs * (t - x_i) + y_i
    coeffs.insert(coeffs.begin(), 0.0);
    for (size_t j = 0; j + 1 < coeffs.size(); ++j) coeffs[j] -= x[i] * coeffs[j + 1];
    coeffs[0] += y[i];
  }
  return coeffs;
}

template <typename MatT>
HyperbolicEigenvalues garding_sampled(const HessianOperator& h, const MatT& m) {
  require_polynomial(h, "garding_eigenvalues");
  int deg = degree(h);
  std::vector<double> lam = eigenvalues(m);
  double c = h.dim * (1.0 + m.max_abs()) + 1.0;
  std::vector<double> ts(deg + 1), ys(deg + 1);
  for (int i = 0; i <= deg; ++i) {
    ts[i] = c * std::cos(M_PI * i / deg);
    std::vector<double> shifted(lam);
    for (double& x : shifted) x += ts[i];
    ys[i] = eig_vp(h, shifted, false).value;
  }
  std::vector<double> coeffs = fit_polynomial(ts, ys);
  std::vector<double> roots = real_rooted_roots(coeffs);
  // Polish against the true function t -> H(M + tI): the interpolation fit
  // carries rounding noise that a multiple root amplifies to sqrt(noise).
  std::vector<double> dcoeffs = poly_derivative(coeffs);
  for (double& r : roots) {
    auto p_true = [&](double t) {
      std::vector<double> shifted(lam);
      for (double& x : shifted) x += t;
      return eig_vp(h, shifted, false).value;
    };
    double best = r, best_abs = std::abs(p_true(r));
    double t = r;
    for (int it = 0; it < 60; ++it) {
      double dp = poly_eval(dcoeffs, t);
      if (dp == 0.0) break;
      double pt = p_true(t);
      double step = pt / dp;
      t -= step;
      double a = std::abs(p_true(t));
      if (a < best_abs) {
        best_abs = a;
        best = t;
      }
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(t))) break;
    }
    r = best;
  }
  HyperbolicEigenvalues out;
  for (double r : roots) out.values.push_back(-r);
  std::sort(out.values.begin(), out.values.end());
  return out;
}

}  // namespace

std::vector<double> elementary_symmetric(const std::vector<double>& x) {
  std::vector<double> e(x.size() + 1, 0.0);
  e[0] = 1.0;
  size_t used = 0;
  for (double v : x) {
    ++used;
    for (size_t r = used; r >= 1; --r) e[r] += v * e[r - 1];
  }
  return e;
}

// ---- factories ----

HessianOperator sigma_operator(int k, int d, Realm realm) {
  if (k < 1 || k > d) throw std::invalid_argument("sigma_operator: need 1 <= k <= d");
  HessianOperator op;
  op.kind = HessianOperator::Kind::polynomial;
  op.family = HessianOperator::Family::sigma;
  op.realm = realm;
  op.dim = d;
  op.order = k;
  return op;
}

HessianOperator det_operator(int d, Realm realm) { return sigma_operator(d, d, realm); }

HessianOperator mu_operator(int k, int d, Realm realm) {
  if (k < 1 || k > d) throw std::invalid_argument("mu_operator: need 1 <= k <= d");
  double n = binom(d, k);
  if (k * n > 1e4)
    throw std::invalid_argument("mu_operator: k * C(d,k) exceeds the 1e4 subset guard");
  HessianOperator op;
  op.kind = HessianOperator::Kind::polynomial;
  op.family = HessianOperator::Family::mu;
  op.realm = realm;
  op.dim = d;
  op.order = k;
  return op;
}

HessianOperator derivative_operator(const HessianOperator& h, int j) {
  require_polynomial(h, "derivative_operator");
  if (j == 0) return h;
  int m = degree(h);
  if (j < 0 || j >= m)
    throw std::invalid_argument("derivative_operator: order must satisfy 0 <= j < degree");
  HessianOperator op = h;
  if (h.family == HessianOperator::Family::sigma) {
    // d/dt of scale*e_k picks up (d-k+1) e_{k-1}; fold j steps into order/scale
    op.order = h.order - j;
    op.scale = h.scale * falling_product(h.dim - h.order, j);
  } else {
    op.deriv = h.deriv + j;
  }
  return op;
}

HessianOperator normalized_root(const HessianOperator& h) {
  require_polynomial(h, "normalized_root");
  HessianOperator op;
  op.kind = HessianOperator::Kind::normalized_root;
  op.realm = h.realm;
  op.dim = h.dim;
  op.parts = {h};
  return op;
}

HessianOperator quotient_operator(const HessianOperator& h, int k) {
  require_polynomial(h, "quotient_operator");
  int m = degree(h);
  if (k < 1 || k >= m) throw std::invalid_argument("quotient_operator: need 1 <= k < degree");
  HessianOperator op;
  op.kind = HessianOperator::Kind::quotient;
  op.realm = h.realm;
  op.dim = h.dim;
  op.param = k;
  op.parts = {h, derivative_operator(h, k)};
  return op;
}

HessianOperator min_eigenvalue_operator(const HessianOperator& h) {
  require_polynomial(h, "min_eigenvalue_operator");
  HessianOperator op;
  op.kind = HessianOperator::Kind::min_eigenvalue;
  op.realm = h.realm;
  op.dim = h.dim;
  op.parts = {h};
  return op;
}

HessianOperator geometric_mean_operator(const std::vector<HessianOperator>& components) {
  if (components.empty())
    throw std::invalid_argument("geometric_mean_operator: empty component list");
  for (const auto& c : components) {
    if (degree(c) != 1)
      throw std::invalid_argument("geometric_mean_operator: components must be 1-homogeneous");
    if (c.kind == HessianOperator::Kind::translated || c.kind == HessianOperator::Kind::lifted)
      throw std::invalid_argument(
          "geometric_mean_operator: apply translation/lifting to the mean, not its components");
    if (c.dim != components[0].dim || c.realm != components[0].realm)
      throw std::invalid_argument("geometric_mean_operator: mismatched components");
  }
  if (components.size() == 1) return components[0];
  HessianOperator op;
  op.kind = HessianOperator::Kind::geometric_mean;
  op.realm = components[0].realm;
  op.dim = components[0].dim;
  op.parts = components;
  return op;
}

HessianOperator translated_operator(const HessianOperator& f, const SymMatrix& g) {
  if (f.realm != Realm::real_case || f.dim != g.dim())
    throw std::invalid_argument("translated_operator: realm/dimension mismatch");
  HessianOperator op;
  op.kind = HessianOperator::Kind::translated;
  op.realm = f.realm;
  op.dim = f.dim;
  op.parts = {f};
  op.shift = g;
  return op;
}

HessianOperator translated_operator(const HessianOperator& f, const HermMatrix& g) {
  if (f.realm != Realm::complex_case || f.dim != g.dim())
    throw std::invalid_argument("translated_operator: realm/dimension mismatch");
  HessianOperator op;
  op.kind = HessianOperator::Kind::translated;
  op.realm = f.realm;
  op.dim = f.dim;
  op.parts = {f};
  op.cshift = g;
  return op;
}

HessianOperator lifted_operator(const HessianOperator& g_complex) {
  if (g_complex.realm != Realm::complex_case)
    throw std::invalid_argument("lifted_operator: base must be a complex-realm operator");
  HessianOperator op;
  op.kind = HessianOperator::Kind::lifted;
  op.realm = Realm::real_case;
  op.dim = 2 * g_complex.dim;
  op.parts = {g_complex};
  return op;
}

// ---- structure queries ----

bool is_polynomial_kind(const HessianOperator& op) {
  return op.kind == HessianOperator::Kind::polynomial;
}

int degree(const HessianOperator& op) {
  switch (op.kind) {
    case HessianOperator::Kind::polynomial:
      if (op.family == HessianOperator::Family::sigma) return op.order;
      return static_cast<int>(binom(op.dim, op.order)) - op.deriv;
    case HessianOperator::Kind::translated:
    case HessianOperator::Kind::lifted:
      return degree(op.parts[0]);
    default:
      return 1;
  }
}

double value_at_identity(const HessianOperator& op) {
  if (op.realm == Realm::complex_case) return evaluate(op, HermMatrix::identity(op.dim));
  return evaluate(op, SymMatrix::identity(op.dim));
}

// ---- evaluation ----

double evaluate(const HessianOperator& op, const SymMatrix& m) {
  if (op.realm != Realm::real_case)
    throw std::invalid_argument("evaluate: complex-realm operator given a real matrix");
  switch (op.kind) {
    case HessianOperator::Kind::translated:
      return evaluate(op.parts[0], m + op.shift);
    case HessianOperator::Kind::lifted:
      return evaluate(op.parts[0], phi_project(m));
    default:
      return eig_vp(op, eigenvalues(m), false).value;
  }
}

double evaluate(const HessianOperator& op, const HermMatrix& m) {
  if (op.realm != Realm::complex_case)
    throw std::invalid_argument("evaluate: real-realm operator given a Hermitian matrix");
  if (op.kind == HessianOperator::Kind::translated) return evaluate(op.parts[0], m + op.cshift);
  return eig_vp(op, eigenvalues(m), false).value;
}

SymMatrix gradient(const HessianOperator& op, const SymMatrix& m) {
  if (op.realm != Realm::real_case)
    throw std::invalid_argument("gradient: complex-realm operator given a real matrix");
  switch (op.kind) {
    case HessianOperator::Kind::translated:
      return gradient(op.parts[0], m + op.shift);
    case HessianOperator::Kind::lifted:
      // Realized-problem convention: the matrix of partial derivatives along
      // the embedded Hermitian subspace is the embedding of the complex
      // gradient (twice the naive projected real gradient).
      return phi_embed(gradient(op.parts[0], phi_project(m)));
    default: {
      SpectralDecomposition dec = spectral(m);
      VP vp = eig_vp(op, dec.values, true);
      return SymMatrix::conjugated_diagonal(dec.frame, vp.partials);
    }
  }
}

HermMatrix gradient(const HessianOperator& op, const HermMatrix& m) {
  if (op.realm != Realm::complex_case)
    throw std::invalid_argument("gradient: real-realm operator given a Hermitian matrix");
  if (op.kind == HessianOperator::Kind::translated) return gradient(op.parts[0], m + op.cshift);
  HermSpectralDecomposition dec = spectral(m);
  VP vp = eig_vp(op, dec.values, true);
  return HermMatrix::conjugated_diagonal(dec.frame, vp.partials);
}

double identity_derivative(const HessianOperator& op, const SymMatrix& m) {
  switch (op.kind) {
    case HessianOperator::Kind::translated:
      return identity_derivative(op.parts[0], m + op.shift);
    case HessianOperator::Kind::lifted:
      return gradient(op, m).trace();
    default: {
      VP vp = eig_vp(op, eigenvalues(m), true);
      double s = 0.0;
      for (double p : vp.partials) s += p;
      return s;
    }
  }
}

// ---- cone tests ----

double cone_margin(const HessianOperator& op, const SymMatrix& m) {
  switch (op.kind) {
    case HessianOperator::Kind::translated:
      return cone_margin(op.parts[0], m + op.shift);
    case HessianOperator::Kind::lifted:
      return cone_margin(op.parts[0], phi_project(m));
    default:
      return margin_vp(op, eigenvalues(m));
  }
}

double cone_margin(const HessianOperator& op, const HermMatrix& m) {
  if (op.kind == HessianOperator::Kind::translated)
    return cone_margin(op.parts[0], m + op.cshift);
  return margin_vp(op, eigenvalues(m));
}

ConeResult in_cone(const HessianOperator& op, const SymMatrix& m) {
  return classify(cone_margin(op, m), 1e-9 * (1.0 + m.max_abs()));
}

ConeResult in_cone(const HessianOperator& op, const HermMatrix& m) {
  return classify(cone_margin(op, m), 1e-9 * (1.0 + m.max_abs()));
}

// ---- generalized eigenvalues ----

HyperbolicEigenvalues garding_eigenvalues(const HessianOperator& h, const SymMatrix& m) {
  return garding_sampled(h, m);
}

HyperbolicEigenvalues garding_eigenvalues(const HessianOperator& h, const HermMatrix& m) {
  return garding_sampled(h, m);
}

std::vector<double> garding_eigenvalues_exact(const HessianOperator& h,
                                              const std::vector<double>& matrix_eigs) {
  require_polynomial(h, "garding_eigenvalues_exact");
  std::vector<double> roots = real_rooted_roots(garding_coeffs(h, matrix_eigs));
  std::vector<double> vals;
  for (double r : roots) vals.push_back(-r);
  std::sort(vals.begin(), vals.end());
  return vals;
}

}  // namespace hess
