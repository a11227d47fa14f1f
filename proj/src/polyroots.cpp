#include "hessian/polyroots.hpp"

#include <algorithm>
#include <cmath>

#include "hessian/errors.hpp"

namespace hess {

double poly_eval(const std::vector<double>& coeffs, double t) {
  double v = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
  return v;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
  std::vector<double> d;
  for (size_t i = 1; i < coeffs.size(); ++i) d.push_back(static_cast<double>(i) * coeffs[i]);
  return d;
}

namespace {

// Magnitude of the largest term at t: scale reference for the zero test.
double poly_scale(const std::vector<double>& coeffs, double t) {
  double s = 0.0, p = 1.0;
  for (double c : coeffs) {
    s = std::max(s, std::abs(c) * std::abs(p));
    p *= t;
  }
  return std::max(s, 1e-300);
}

bool is_zero_at(const std::vector<double>& coeffs, double t) {
  return std::abs(poly_eval(coeffs, t)) <= 1e-9 * poly_scale(coeffs, t);
}

double bisect_root(const std::vector<double>& coeffs, double a, double b) {
  double fa = poly_eval(coeffs, a);
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (b - a <= 1e-15 * (1.0 + std::abs(m))) return m;
    double fm = poly_eval(coeffs, m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Recursive root finder: roots of the derivative partition the line into
// monotone intervals; each interval contributes at most one simple root, and
// multiple roots of p sit on roots of p' where |p| vanishes.
std::vector<double> roots_rec(const std::vector<double>& coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg <= 0) return {};
  if (deg == 1) return {-coeffs[0] / coeffs[1]};

  std::vector<double> dr = roots_rec(poly_derivative(coeffs));
  std::sort(dr.begin(), dr.end());

  // Cauchy bound on root magnitude.
  double an = std::abs(coeffs[deg]);
  double bound = 0.0;
  for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(coeffs[i]) / an);
  bound += 1.0;

  std::vector<double> breakpoints;
  breakpoints.push_back(-bound);
  for (double r : dr)
    if (r > -bound && r < bound) breakpoints.push_back(r);
  breakpoints.push_back(bound);

  std::vector<double> roots;
  // Multiple roots: a root of multiplicity mu of p appears mu-1 times among
  // the roots of p', so a cluster of c coincident derivative roots where p
  // vanishes is a root of p of multiplicity c+1.
  for (size_t i = 0; i < dr.size();) {
    size_t j = i;
    while (j + 1 < dr.size() && dr[j + 1] - dr[i] <= 1e-9 * (1.0 + std::abs(dr[i]))) ++j;
    double r = dr[(i + j) / 2];
    if (is_zero_at(coeffs, r)) {
      for (size_t c = 0; c < j - i + 2; ++c) roots.push_back(r);
    }
    i = j + 1;
  }

  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double a = breakpoints[i], b = breakpoints[i + 1];
    if (is_zero_at(coeffs, a) || is_zero_at(coeffs, b)) continue;
    double fa = poly_eval(coeffs, a), fb = poly_eval(coeffs, b);
    if ((fa < 0.0) != (fb < 0.0)) roots.push_back(bisect_root(coeffs, a, b));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<double> real_rooted_roots(std::vector<double> coeffs) {
  // Trim tiny leading coefficients relative to the largest one.
  double amax = 0.0;
  for (double c : coeffs) amax = std::max(amax, std::abs(c));
  if (amax == 0.0) throw hyperbolicity_violation("zero polynomial has no well-defined roots");
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-13 * amax) coeffs.pop_back();
  for (double& c : coeffs) c /= amax;

  int deg = static_cast<int>(coeffs.size()) - 1;
  std::vector<double> roots = roots_rec(coeffs);
  if (static_cast<int>(roots.size()) > deg) roots.resize(deg);
  if (static_cast<int>(roots.size()) < deg) {
    // Odd multiplicities >= 3: one sign-change copy plus mult-1 derivative
    // copies overshoots by design above, but undershoot can still occur for
    // clustered roots; pad by duplicating the nearest located root only if
    // the residual there genuinely vanishes.
    std::vector<double> padded = roots;
    for (double r : roots) {
      while (static_cast<int>(padded.size()) < deg && is_zero_at(coeffs, r)) {
        padded.push_back(r);
        break;
      }
    }
    roots = padded;
    std::sort(roots.begin(), roots.end());
    if (static_cast<int>(roots.size()) < deg)
      throw hyperbolicity_violation("found " + std::to_string(roots.size()) + " real roots, expected " +
                                    std::to_string(deg));
  }
  return roots;
}

}  // namespace hess
