#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hessian/errors.hpp"
#include "hessian/linalg.hpp"
#include "hessian/polyroots.hpp"
#include "hessian/rng.hpp"
#include "hessian/spectral.hpp"

using namespace hess;

namespace {

// Characteristic polynomial coefficients of det(tI - M) via the
// Faddeev-LeVerrier recursion on traces of powers; independent of any
// eigenvalue iteration.
std::vector<double> char_poly(const SymMatrix& m) {
  int n = m.dim();
  Matrix a = m.full();
  Matrix power = a;
  std::vector<double> tr(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) tr[k] += power(i, i);
    if (k < n) power = power * a;
  }
  // Newton's identities: c[n] = 1; n descending
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += c[n - k + i] * tr[i];
    c[n - k] = -s / k;
  }
  return c;  // ascending in t
}

double frame_orthonormality_defect(const Matrix& q) {
  Matrix g = q.transposed() * q;
  double worst = 0.0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

double reconstruction_defect(const SymMatrix& m, const SpectralDecomposition& dec) {
  SymMatrix back = SymMatrix::conjugated_diagonal(dec.frame, dec.values);
  return (back - m).max_abs();
}

}  // namespace

TEST_CASE("spectral of diagonal and identity matrices") {
  SymMatrix m = SymMatrix::diagonal({3, 1, 2});
  auto dec = spectral(m);
  CHECK(dec.values[0] == doctest::Approx(1));
  CHECK(dec.values[1] == doctest::Approx(2));
  CHECK(dec.values[2] == doctest::Approx(3));

  auto di = spectral(SymMatrix::identity(3));
  for (double v : di.values) CHECK(v == doctest::Approx(1));
  CHECK(frame_orthonormality_defect(di.frame) <= 1e-12);
}

TEST_CASE("spectral matches characteristic-polynomial roots on random 4x4") {
  auto eng = make_engine(11, 0);
  for (int rep = 0; rep < 50; ++rep) {
    SymMatrix m = random_symmetric(eng, 4);
    auto dec = spectral(m);
    auto roots = real_rooted_roots(char_poly(m));
    REQUIRE(roots.size() == 4);
    for (int i = 0; i < 4; ++i)
      CHECK(dec.values[i] == doctest::Approx(roots[i]).epsilon(1e-7));
    CHECK(frame_orthonormality_defect(dec.frame) <= 1e-12);
    CHECK(reconstruction_defect(m, dec) <= 1e-10 * (1.0 + m.max_abs()));
  }
}

TEST_CASE("hermitian spectral: reconstruction and unitary frame") {
  auto eng = make_engine(12, 0);
  for (int rep = 0; rep < 30; ++rep) {
    HermMatrix m = random_hermitian(eng, 4);
    auto dec = spectral(m);
    HermMatrix back = HermMatrix::conjugated_diagonal(dec.frame, dec.values);
    CHECK((back - m).max_abs() <= 1e-10 * (1.0 + m.max_abs()));
    CMatrix g = dec.frame.adjoint() * dec.frame;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(std::abs(g(i, j) - cplx(i == j ? 1.0 : 0.0)) <= 1e-12);
    for (size_t i = 0; i + 1 < dec.values.size(); ++i) CHECK(dec.values[i] <= dec.values[i + 1]);
  }
}

TEST_CASE("psd_sqrt on exact and random PSD matrices") {
  CHECK((psd_sqrt(SymMatrix::identity(3)) - SymMatrix::identity(3)).max_abs() <= 1e-12);

  SymMatrix d = SymMatrix::diagonal({4, 0});
  SymMatrix s = psd_sqrt(d);
  CHECK(s(0, 0) == doctest::Approx(2));
  CHECK(s(1, 1) == doctest::Approx(0));

  auto eng = make_engine(13, 0);
  for (int rep = 0; rep < 30; ++rep) {
    Matrix b(3, 3);
    {
      std::normal_distribution<double> g(0.0, 1.0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = g(eng);
    }
    SymMatrix a = SymMatrix::from_full(b * b.transposed());
    SymMatrix r = psd_sqrt(a);
    SymMatrix rr = SymMatrix::from_full(r.full() * r.full());
    CHECK((rr - a).max_abs() <= 1e-9 * (1.0 + a.max_abs()));
  }

  CHECK_THROWS_AS(psd_sqrt(SymMatrix::diagonal({1, -1e-6})), not_psd_error);
}

TEST_CASE("phi_embed block structure") {
  CHECK((phi_embed(HermMatrix::identity(3)) - SymMatrix::identity(6)).max_abs() == 0.0);

  HermMatrix b(2);
  b.set(0, 1, cplx(0.0, 1.0));  // [[0, i], [-i, 0]]
  SymMatrix e = phi_embed(b);
  // Re block vanishes
  CHECK(e(0, 0) == 0.0);
  CHECK(e(0, 1) == 0.0);
  CHECK(e(2, 2) == 0.0);
  CHECK(e(2, 3) == 0.0);
  // Im block is [[0,1],[-1,0]] at the top-right
  CHECK(e(0, 2) == 0.0);
  CHECK(e(0, 3) == 1.0);
  CHECK(e(1, 2) == -1.0);
  CHECK(e(1, 3) == 0.0);
}

TEST_CASE("phi is a real-algebra homomorphism") {
  auto eng = make_engine(14, 0);
  std::normal_distribution<double> g(0.0, 1.0);
  auto rand_cmat = [&](int n) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = cplx(g(eng), g(eng));
    return a;
  };
  for (int rep = 0; rep < 20; ++rep) {
    CMatrix a = rand_cmat(3), b = rand_cmat(3);
    Matrix pa = phi_embed_general(a), pb = phi_embed_general(b);
    CMatrix ab = a * b;
    Matrix papb = pa * pb;
    Matrix pab = phi_embed_general(ab);
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) worst = std::max(worst, std::abs(pab(i, j) - papb(i, j)));
    CHECK(worst <= 1e-12 * 100);

    // additivity
    CMatrix sum(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sum(i, j) = a(i, j) + b(i, j);
    Matrix psum = phi_embed_general(sum);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        CHECK(psum(i, j) == doctest::Approx(pa(i, j) + pb(i, j)).epsilon(1e-12));

    // conjugate transpose maps to transpose
    Matrix padj = phi_embed_general(a.adjoint());
    Matrix pat = pa.transposed();
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) CHECK(padj(i, j) == doctest::Approx(pat(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("eigenvalue doubling under phi_embed") {
  auto eng = make_engine(15, 0);
  for (int rep = 0; rep < 20; ++rep) {
    HermMatrix b = random_hermitian(eng, 3);
    std::vector<double> ce = eigenvalues(b);
    std::vector<double> re = eigenvalues(phi_embed(b));
    REQUIRE(re.size() == 6);
    for (int i = 0; i < 3; ++i) {
      CHECK(re[2 * i] == doctest::Approx(ce[i]).epsilon(1e-9));
      CHECK(re[2 * i + 1] == doctest::Approx(ce[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("phi_embed_vec examples and round trip") {
  std::vector<double> x = phi_embed_vec({cplx(1, 2)});
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 2.0);
  CHECK(phi_embed_vec({cplx(0, 0), cplx(0, 0)}) == std::vector<double>{0, 0, 0, 0});

  auto eng = make_engine(16, 0);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<cplx> z(4);
    for (cplx& v : z) v = cplx(g(eng), g(eng));
    std::vector<cplx> back = phi_unembed_vec(phi_embed_vec(z));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(back[i] - z[i]) == 0.0);
  }
}

TEST_CASE("phi_project inverts phi_embed") {
  auto eng = make_engine(17, 0);
  for (int rep = 0; rep < 10; ++rep) {
    HermMatrix b = random_hermitian(eng, 3);
    HermMatrix back = phi_project(phi_embed(b));
    CHECK((back - b).max_abs() <= 1e-15);
  }
}
