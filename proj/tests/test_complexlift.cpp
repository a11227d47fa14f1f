#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hessian/complexlift.hpp"
#include "hessian/errors.hpp"
#include "hessian/operators.hpp"
#include "hessian/rng.hpp"
#include "hessian/spectral.hpp"

using namespace hess;

namespace {

HermMatrix random_pd_hermitian(std::mt19937_64& eng, int d, double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> w(d);
  for (double& x : w) x = u(eng);
  return HermMatrix::conjugated_diagonal(haar_unitary(eng, d), w);
}

double herm_dist(const HermMatrix& a, const HermMatrix& b) {
  HermMatrix d = a - b;
  return std::sqrt(d.dot(d));
}

double sym_dist(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix d = a - b;
  return std::sqrt(d.dot(d));
}

HermMatrix conjugate(const CMatrix& u, const HermMatrix& m) {
  return HermMatrix::from_full(u * m.full() * u.adjoint());
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

TEST_CASE("lifted operator values and gradients match the complex base on embedded matrices") {
  auto eng = make_engine(41);
  for (int d : {1, 2, 3}) {
    std::vector<HessianOperator> bases = {
        normalized_root(det_operator(d, Realm::complex_case)),
        det_operator(d, Realm::complex_case),
    };
    if (d >= 2) {
      bases.push_back(normalized_root(sigma_operator(2, d, Realm::complex_case)));
      bases.push_back(normalized_root(mu_operator(2, d, Realm::complex_case)));
    }
    for (const HessianOperator& g : bases) {
      HessianOperator lifted = lifted_operator(g);
      CHECK(lifted.dim == 2 * d);
      for (int trial = 0; trial < 40; ++trial) {
        HermMatrix beta = random_pd_hermitian(eng, d);
        SymMatrix alpha = phi_embed(beta);
        CHECK(rel_err(evaluate(lifted, alpha), evaluate(g, beta)) <= 1e-10);
        // realized gradient = embedding of the complex gradient
        SymMatrix fg = gradient(lifted, alpha);
        HermMatrix gg = gradient(g, beta);
        CHECK(sym_dist(fg, phi_embed(gg)) <= 1e-9 * (1.0 + fg.max_abs()));
        // the embedding doubles the gradient trace
        CHECK(rel_err(fg.trace(), 2.0 * gg.trace()) <= 1e-10);
      }
    }
  }
}

TEST_CASE("lifted operator evaluates through the Hermitian projection on general input") {
  auto eng = make_engine(42);
  HessianOperator g = normalized_root(sigma_operator(2, 3, Realm::complex_case));
  HessianOperator lifted = lifted_operator(g);
  for (int trial = 0; trial < 20; ++trial) {
    SymMatrix alpha = random_symmetric(eng, 6);
    HermMatrix proj = phi_project(alpha);
    if (cone_margin(g, proj) < 0.1) continue;
    CHECK(rel_err(evaluate(lifted, alpha), evaluate(g, proj)) <= 1e-10);
  }
}

TEST_CASE("complex coefficients: identity values, Euler identity, unitary equivariance") {
  auto eng = make_engine(43);
  for (int d : {2, 3, 4}) {
    HessianOperator root_det = normalized_root(det_operator(d, Realm::complex_case));
    // at the identity: b = I/d and l = 1 for the normalized determinant root
    ComplexCoefficients at_id = complex_coefficients(root_det, HermMatrix::identity(d));
    CHECK(herm_dist(at_id.b, HermMatrix::identity(d) * (1.0 / d)) <= 1e-12);
    CHECK(rel_err(at_id.l, 1.0) <= 1e-12);

    // sigma_2 root at the identity: gradient trace is G(I) = sqrt(C(d,2))
    HessianOperator root_s2 = normalized_root(sigma_operator(2, d, Realm::complex_case));
    ComplexCoefficients s2_id = complex_coefficients(root_s2, HermMatrix::identity(d));
    double gI = std::sqrt(0.5 * d * (d - 1));
    CHECK(rel_err(s2_id.l, 1.0 / gI) <= 1e-12);

    for (const HessianOperator& g : {root_det, root_s2}) {
      for (int trial = 0; trial < 25; ++trial) {
        HermMatrix beta = random_pd_hermitian(eng, d);
        ComplexCoefficients cc = complex_coefficients(g, beta);
        // b is PSD with unit trace
        CHECK(rel_err(cc.b.trace(), 1.0) <= 1e-12);
        CHECK(eigenvalues(cc.b).front() >= -1e-12);
        CHECK(cc.l > 0.0);
        // Euler identity for the 1-homogeneous base: tr(b beta) = l G(beta)
        CHECK(std::abs(cc.b.dot(beta) - cc.l * evaluate(g, beta)) <= 1e-8);
        // Maclaurin bound: the running weight is maximal at the identity
        CHECK(cc.l <= complex_coefficients(g, HermMatrix::identity(d)).l + 1e-12);
        // unitary equivariance
        CMatrix u = haar_unitary(eng, d);
        ComplexCoefficients cu = complex_coefficients(g, conjugate(u, beta));
        CHECK(herm_dist(cu.b, conjugate(u, cc.b)) <= 1e-9);
        CHECK(rel_err(cu.l, cc.l) <= 1e-9);
      }
    }
  }
}

TEST_CASE("factor conversion: realized diffusion is a quarter of the embedded complex diffusion") {
  auto eng = make_engine(44);
  for (int d : {1, 2, 3}) {
    std::vector<HessianOperator> bases = {normalized_root(det_operator(d, Realm::complex_case))};
    if (d >= 2) bases.push_back(normalized_root(sigma_operator(2, d, Realm::complex_case)));
    for (const HessianOperator& g : bases) {
      HessianOperator lifted = lifted_operator(g);
      for (int trial = 0; trial < 40; ++trial) {
        HermMatrix beta = random_pd_hermitian(eng, d);
        ComplexCoefficients cc = complex_coefficients(g, beta);
        SymMatrix a_paper = realized_diffusion(lifted, phi_embed(beta));
        CHECK(sym_dist(a_paper, phi_embed(cc.b) * 0.25) <= 1e-9);
        CHECK(rel_err(a_paper.trace(), 0.5) <= 1e-12);

        // the Bellman-layer trace-1 coefficients at the embedded control are
        // exactly (2 a, 2 l): the gradient is 0-homogeneous, so rescaling the
        // embedded control to trace 1 does not move it
        ControlCoefficients rc = coefficients(lifted, embed_control(beta));
        CHECK(sym_dist(rc.a, a_paper * 2.0) <= 1e-9);
        CHECK(rel_err(rc.h, 2.0 * cc.l) <= 1e-9);
      }
    }
  }
}

TEST_CASE("embedding doubles matrix and determinant eigenvalue data") {
  auto eng = make_engine(45);
  for (int d : {2, 3}) {
    HessianOperator det_c = det_operator(d, Realm::complex_case);
    HessianOperator det_r = det_operator(2 * d, Realm::real_case);
    for (int trial = 0; trial < 20; ++trial) {
      HermMatrix beta = random_pd_hermitian(eng, d);
      SymMatrix alpha = phi_embed(beta);
      // matrix spectrum doubles
      std::vector<double> ec = eigenvalues(beta), er = eigenvalues(alpha);
      REQUIRE(er.size() == 2 * ec.size());
      for (int i = 0; i < d; ++i) {
        CHECK(std::abs(er[2 * i] - ec[i]) <= 1e-10);
        CHECK(std::abs(er[2 * i + 1] - ec[i]) <= 1e-10);
      }
      // the real determinant polynomial along the identity line is the
      // square of the complex one, so each generalized eigenvalue of the
      // complex operator appears twice for the real one
      for (double t : {-0.7, -0.1, 0.0, 0.3, 1.1, 2.5}) {
        double dc = evaluate(det_c, beta.plus_scaled_identity(t));
        CHECK(rel_err(evaluate(det_r, alpha.plus_scaled_identity(t)), dc * dc) <= 1e-9);
      }
      // (root-finding on the real polynomial is not a usable cross-check
      // here: every root has even multiplicity, so sign-change bracketing
      // cannot isolate them; the squaring identity above is the
      // well-conditioned form of the same statement)
    }
  }
}

TEST_CASE("one complex variable: the lift is half the Laplacian with weight 2") {
  // the one-variable determinant is already 1-homogeneous, and as a
  // polynomial kind it evaluates on all of Hermitian space
  HessianOperator g = det_operator(1, Realm::complex_case);
  HessianOperator lifted = lifted_operator(g);
  auto eng = make_engine(46);
  for (int trial = 0; trial < 10; ++trial) {
    SymMatrix alpha = random_symmetric(eng, 2);
    CHECK(rel_err(evaluate(lifted, alpha), 0.5 * alpha.trace()) <= 1e-12);
  }
  ControlCoefficients cc = coefficients(lifted, SymMatrix::identity(2) * 0.5);
  CHECK(sym_dist(cc.a, SymMatrix::identity(2) * 0.5) <= 1e-12);
  CHECK(rel_err(cc.h, 2.0) <= 1e-12);
}

TEST_CASE("Hermitian-drawn control grid: embedded, trace 1, identity first, weight bound") {
  HessianOperator g = normalized_root(det_operator(2, Realm::complex_case));
  HessianOperator lifted = lifted_operator(g);
  ControlGridSpec spec;
  spec.n_rays = 24;
  spec.n_orthogonal = 2;
  spec.seed = 7;
  ControlSet set = lifted_control_grid(lifted, spec);
  CHECK(set.includes_identity);
  CHECK(static_cast<int>(set.points.size()) >= 24);
  CHECK(sym_dist(set.points[0], SymMatrix::identity(4) * 0.25) <= 1e-12);
  for (size_t i = 0; i < set.points.size(); ++i) {
    const SymMatrix& alpha = set.points[i];
    CHECK(rel_err(alpha.trace(), 1.0) <= 1e-12);
    // every control lies in the embedded Hermitian subspace
    CHECK(sym_dist(phi_embed(phi_project(alpha)), alpha) <= 1e-10);
    const ControlCoefficients& cc = set.coeffs[i];
    CHECK(rel_err(cc.a.trace(), 1.0) <= 1e-10);
    CHECK(eigenvalues(cc.a).front() >= -1e-12);
    // h = 2l <= 2 by the Maclaurin bound (G is normalized so G(I) = 1)
    CHECK(cc.h > 0.0);
    CHECK(cc.h <= 2.0 + 1e-9);
  }
  CHECK_THROWS_AS(lifted_control_grid(g, spec), std::invalid_argument);
}

TEST_CASE("complex Hessian recovery from realified second derivatives") {
  // v = |z|^2 has v_xx = 2 I_{2d} and v_zzbar = I_d
  CHECK(herm_dist(complex_hessian_from_real(SymMatrix::identity(6) * 2.0),
                  HermMatrix::identity(3)) <= 1e-14);
  // a pluriharmonic quadratic, v = Re(z^2) = x^2 - y^2 in one variable,
  // has vanishing complex Hessian
  SymMatrix vxx = SymMatrix::diagonal({2.0, -2.0});
  CHECK(herm_dist(complex_hessian_from_real(vxx), HermMatrix(1)) <= 1e-14);
}

TEST_CASE("lift rejects mismatched realms") {
  ComplexProblem bad;
  bad.op = det_operator(2, Realm::real_case);
  bad.dom = make_ball({0.0, 0.0, 0.0, 0.0}, 1.0, Realm::complex_case);
  bad.f = constant_field(1.0);
  bad.phi = constant_field(0.0);
  CHECK_THROWS_AS(lift(bad), std::invalid_argument);
  bad.op = normalized_root(det_operator(2, Realm::complex_case));
  bad.dom = make_ball({0.0, 0.0, 0.0, 0.0}, 1.0, Realm::real_case);
  CHECK_THROWS_AS(lift(bad), std::invalid_argument);
}

TEST_CASE("lifted complex Dirichlet problem solves exactly on a quadratic fixture") {
  // G(u_zzbar) = det^(1/2) on the unit ball of C^2 with f = 1 and
  // phi = |z|^2: the solution is v = |z|^2 itself.
  ComplexProblem cp;
  cp.op = normalized_root(det_operator(2, Realm::complex_case));
  cp.dom = make_ball({0.0, 0.0, 0.0, 0.0}, 1.0, Realm::complex_case);
  cp.f = constant_field(1.0);
  cp.phi = radial_field({0.0, 0.0, 0.0, 0.0}, {0.0, 1.0});

  RealizedProblem rp = lift(cp);
  validate_problem(rp.real);
  Grid grid = build_grid(rp.real.dom, 0.25);
  ControlGridSpec spec;
  spec.n_rays = 12;
  spec.n_orthogonal = 2;
  spec.seed = 11;
  ControlSet controls = lifted_control_grid(rp.real.op, spec);

  GridSolution sol = policy_iteration(rp.real, grid, controls);
  CHECK(sol.converged);
  double err = 0.0;
  for (int n = 0; n < grid.n_interior(); ++n) {
    double r2 = 0.0;
    for (double c : grid.node_points[n]) r2 += c * c;
    err = std::max(err, std::abs(sol.values[n] - r2));
  }
  CHECK(err <= 1e-6);
  // the argmin policy is the identity control everywhere (the only control
  // with zero residual at the exact quadratic solution)
  for (int n = 0; n < grid.n_interior(); ++n) CHECK(sol.policy[n] == 0);

  // the recovered complex Hessian at the exact solution satisfies the
  // complex Bellman equation: min over Hermitian controls of
  // tr(b v_zzbar) - l f = 0 at v_zzbar = I
  HermMatrix vzz = complex_hessian_from_real(SymMatrix::identity(4) * 2.0);
  double best = 1e300;
  for (const SymMatrix& alpha : controls.points) {
    ComplexCoefficients cc = complex_coefficients(cp.op, phi_project(alpha) * 2.0);
    best = std::min(best, cc.b.dot(vzz) - cc.l * 1.0);
  }
  CHECK(best >= -1e-12);
  CHECK(best <= 1e-12);
}
