#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hessian/bellman.hpp"
#include "hessian/errors.hpp"
#include "hessian/operators.hpp"
#include "hessian/rng.hpp"
#include "hessian/spectral.hpp"

using namespace hess;

namespace {

SymMatrix random_pd(std::mt19937_64& eng, int d, double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> w(d);
  for (double& x : w) x = u(eng);
  return SymMatrix::conjugated_diagonal(haar_orthogonal(eng, d), w);
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

// Closed form of the running weight for F = H^(1/m): the Maclaurin-factor
// expression m * H(I)^(-1/m) * [s_m^(1/m) / s_{m-1}^(1/(m-1))]^(m-1) with
// s_j the elementary symmetric functions of the generalized eigenvalues.
double h_closed_form(const HessianOperator& hpoly, const SymMatrix& alpha) {
  int m = degree(hpoly);
  double hI = value_at_identity(hpoly);
  auto lam = garding_eigenvalues_exact(hpoly, eigenvalues(alpha));
  auto s = elementary_symmetric(lam);
  double ratio = std::pow(s[m], 1.0 / m) / std::pow(s[m - 1], 1.0 / (m - 1));
  return m * std::pow(hI, -1.0 / m) * std::pow(ratio, m - 1);
}

double maclaurin_factor(const HessianOperator& hpoly, const SymMatrix& alpha) {
  int m = degree(hpoly);
  auto lam = garding_eigenvalues_exact(hpoly, eigenvalues(alpha));
  auto s = elementary_symmetric(lam);
  double ratio = std::pow(s[m], 1.0 / m) / std::pow(s[m - 1], 1.0 / (m - 1));
  return m * std::pow(ratio, m - 1);
}

// Conditioned random test instance: draw a well-conditioned interior matrix,
// take its level as c, then shift back by a random multiple of the identity.
// This exercises arbitrary shifts while keeping the oracle's optimal control
// inside the sampled region.
struct Instance {
  SymMatrix gamma;
  double c;
};
Instance random_instance(std::mt19937_64& eng, const HessianOperator& f) {
  std::uniform_real_distribution<double> lam(0.6, 1.0), sc(0.8, 1.25), sh(-1.0, 1.0);
  int d = f.dim;
  std::vector<double> w(d);
  double scale = sc(eng);
  for (double& x : w) x = lam(eng) * scale;
  SymMatrix interior = SymMatrix::conjugated_diagonal(haar_orthogonal(eng, d), w);
  Instance inst;
  inst.c = evaluate(f, interior);
  inst.gamma = interior.plus_scaled_identity(sh(eng));
  return inst;
}

}  // namespace

TEST_CASE("coefficients at the identity control") {
  for (int d : {2, 3, 4}) {
    auto cc = coefficients(normalized_root(det_operator(d)),
                           SymMatrix::identity(d) * (1.0 / d));
    CHECK((cc.a - SymMatrix::identity(d) * (1.0 / d)).max_abs() <= 1e-12);
    CHECK(cc.h == doctest::Approx(1.0).epsilon(1e-12));
  }
  // sigma_k^(1/k): a = I/d and h = C(d,k)^(-1/k); Maclaurin factor 1 at I
  int d = 3, k = 2;
  HessianOperator h2 = sigma_operator(k, d);
  auto cc = coefficients(normalized_root(h2), SymMatrix::identity(d) * (1.0 / d));
  CHECK((cc.a - SymMatrix::identity(d) * (1.0 / d)).max_abs() <= 1e-12);
  CHECK(cc.h == doctest::Approx(std::pow(3.0, -0.5)).epsilon(1e-12));
  CHECK(maclaurin_factor(h2, SymMatrix::identity(d)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coefficients: defining identity, Euler identity, closed form") {
  auto eng = make_engine(41, 0);
  std::vector<HessianOperator> polys = {det_operator(3), sigma_operator(2, 3), mu_operator(2, 3)};
  for (auto& hp : polys) {
    HessianOperator f = normalized_root(hp);
    for (int rep = 0; rep < 50; ++rep) {
      SymMatrix alpha = random_pd(eng, 3, 0.2, 2.0);
      auto cc = coefficients(f, alpha);
      CHECK(std::abs(cc.a.trace() - 1.0) <= 1e-12);
      CHECK(cc.h > 0.0);
      CHECK(eigenvalues(cc.a).front() >= -1e-10);
      // h * F_(I) = 1 by definition
      CHECK(rel_err(cc.h * identity_derivative(f, alpha), 1.0) <= 1e-9);
      // Euler: tr(a * alpha) = h * F(alpha)
      CHECK(std::abs(cc.a.dot(alpha) - cc.h * evaluate(f, alpha)) <= 1e-8);
      // closed-form h for root-normalized hyperbolic polynomials
      CHECK(rel_err(cc.h, h_closed_form(hp, alpha)) <= 1e-9);
      // scale invariance
      auto cc2 = coefficients(f, alpha * 3.7);
      CHECK((cc2.a - cc.a).max_abs() <= 1e-10);
      CHECK(rel_err(cc2.h, cc.h) <= 1e-10);
    }
  }
}

TEST_CASE("coefficients: orthogonal equivariance") {
  auto eng = make_engine(42, 0);
  HessianOperator f = normalized_root(sigma_operator(2, 3));
  for (int rep = 0; rep < 30; ++rep) {
    SymMatrix alpha = random_pd(eng, 3, 0.2, 2.0);
    Matrix o = haar_orthogonal(eng, 3);
    SymMatrix oa = SymMatrix::from_full(o * alpha.full() * o.transposed());
    auto cc = coefficients(f, alpha);
    auto cco = coefficients(f, oa);
    SymMatrix expect = SymMatrix::from_full(o * cc.a.full() * o.transposed());
    CHECK((cco.a - expect).max_abs() <= 1e-9);
    CHECK(rel_err(cco.h, cc.h) <= 1e-9);
  }
}

TEST_CASE("Maclaurin factor stays below one") {
  auto eng = make_engine(43, 0);
  for (int d : {3, 4}) {
    for (int k = 1; k <= d; ++k) {
      HessianOperator h = sigma_operator(k, d);
      for (int rep = 0; rep < 2000; ++rep) {
        SymMatrix alpha = random_pd(eng, d, 0.01, 2.0);
        CHECK(maclaurin_factor(h, alpha) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("bellman_residual: identity infimum and sign behavior") {
  HessianOperator f = normalized_root(det_operator(2));
  ControlGridSpec spec;
  spec.n_rays = 200;
  spec.seed = 7;
  ControlSet controls = control_grid(f, spec);

  SymMatrix id = SymMatrix::identity(2);
  CHECK(std::abs(bellman_residual(controls, id, 1.0)) <= 1e-12);
  for (const auto& cc : controls.coeffs) CHECK(cc.a.dot(id) - cc.h >= -1e-12);

  // F(gamma) > c gives positive residual; F(gamma) < c negative
  SymMatrix g = SymMatrix::diagonal({4, 1});  // F = 2
  CHECK(bellman_residual(controls, g, 1.0) > 0.0);
  CHECK(bellman_residual(controls, g, 3.0) < 0.0);

  // at c = F(gamma) the residual vanishes as the control set densifies
  ControlGridSpec dense = spec;
  dense.n_rays = 4000;
  ControlSet fine = control_grid(f, dense);
  CHECK(std::abs(bellman_residual(fine, g, 2.0)) <= 5e-3);

  // monotone decreasing in c; concave in gamma (pointwise inf of affine maps)
  double r1 = bellman_residual(controls, g, 0.5), r2 = bellman_residual(controls, g, 1.5);
  CHECK(r2 < r1);
  SymMatrix g2 = SymMatrix::diagonal({1, 3});
  SymMatrix mid = (g + g2) * 0.5;
  CHECK(bellman_residual(controls, mid, 1.0) >=
        0.5 * (bellman_residual(controls, g, 1.0) + bellman_residual(controls, g2, 1.0)) - 1e-12);
}

TEST_CASE("shift oracle: residual equals minus t1") {
  HessianOperator f = normalized_root(det_operator(2));
  ControlGridSpec spec;
  spec.n_rays = 4000;
  spec.lambda_floor = 0.2;
  spec.seed = 8;
  ControlSet controls = control_grid(f, spec);
  auto eng = make_engine(44, 0);
  for (int rep = 0; rep < 40; ++rep) {
    Instance inst = random_instance(eng, f);
    auto rep_out = verify_equivalence(f, controls, inst.gamma, inst.c, 5e-3);
    CHECK(rep_out.pass);
  }
}

TEST_CASE("verify_equivalence: pinned boundary cases") {
  HessianOperator f = normalized_root(sigma_operator(2, 3));
  ControlGridSpec spec;
  spec.n_rays = 500;
  spec.seed = 9;
  ControlSet controls = control_grid(f, spec);

  auto r1 = verify_equivalence(f, controls, SymMatrix::identity(3), value_at_identity(f), 1e-9);
  CHECK(r1.pass);
  CHECK(std::abs(r1.t1_oracle) <= 1e-9);

  auto r0 = verify_equivalence(f, controls, SymMatrix(3), 0.0, 1e-9);
  CHECK(std::abs(r0.residual) <= 1e-12);
  CHECK(std::abs(r0.t1_oracle) <= 1e-12);
}

TEST_CASE("verify_equivalence: random instances for sigma_2 in d = 3") {
  HessianOperator f = normalized_root(sigma_operator(2, 3));
  ControlGridSpec spec;
  spec.n_rays = 10000;
  spec.lambda_floor = 0.5;
  spec.seed = 10;
  ControlSet controls = control_grid(f, spec);
  auto eng = make_engine(45, 0);
  int passes = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Instance inst = random_instance(eng, f);
    if (verify_equivalence(f, controls, inst.gamma, inst.c, 1e-3).pass) ++passes;
  }
  CHECK(passes == 100);
}

TEST_CASE("control_grid: contracts") {
  HessianOperator f = normalized_root(det_operator(2));
  ControlGridSpec empty;
  empty.n_rays = 0;
  ControlSet only_id = control_grid(f, empty);
  REQUIRE(only_id.points.size() == 1);
  CHECK((only_id.points[0] - SymMatrix::identity(2) * 0.5).max_abs() <= 1e-15);

  ControlGridSpec spec;
  spec.n_rays = 100;
  spec.n_orthogonal = 3;
  spec.seed = 11;
  ControlSet set = control_grid(f, spec);
  CHECK(set.includes_identity);
  auto eng = make_engine(46, 0);
  for (const auto& p : set.points) {
    CHECK(std::abs(p.trace() - 1.0) <= 1e-12);
    CHECK(cone_margin(f, p) >= spec.margin - 1e-15);
    // conjugation closure of the cone
    Matrix o = haar_orthogonal(eng, 2);
    SymMatrix op = SymMatrix::from_full(o * p.full() * o.transposed());
    CHECK(in_cone(f, op).cls == ConeClass::inside);
  }
  // determinism per seed
  ControlSet again = control_grid(f, spec);
  REQUIRE(again.points.size() == set.points.size());
  for (size_t i = 0; i < set.points.size(); ++i)
    CHECK((again.points[i] - set.points[i]).max_abs() == 0.0);
}

TEST_CASE("boundary limit of the normalized pairing") {
  // for gamma on the cone boundary, tr(a(gamma + eps I) * gamma) -> 0
  HessianOperator f = normalized_root(det_operator(3));
  SymMatrix gamma = SymMatrix::diagonal({1, 1, 0});
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    auto cc = coefficients(f, gamma.plus_scaled_identity(eps));
    double pairing = cc.a.dot(gamma);
    CHECK(pairing < prev);
    prev = pairing;
  }
  CHECK(prev <= 0.05);
}

TEST_CASE("degenerate control is rejected") {
  // the zero matrix has no positive gradient trace for det-type operators
  HessianOperator f = normalized_root(det_operator(3));
  CHECK_THROWS_AS(coefficients(f, SymMatrix(3)), std::exception);
}
