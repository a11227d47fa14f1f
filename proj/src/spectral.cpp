#include "hessian/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hessian/errors.hpp"

namespace hess {

namespace {

double offdiag_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double offdiag_norm(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Jacobi rotation parameter: t solves t^2 + 2*theta*t - 1 = 0 (smaller |t|).
double jacobi_t(double theta) {
  if (!std::isfinite(theta)) return 0.0;
  double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
  return theta >= 0.0 ? t : -t;
}

template <typename DecompT, typename MatT>
void sort_ascending(DecompT& dec, MatT& q) {
  int n = static_cast<int>(dec.values.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return dec.values[a] < dec.values[b]; });
  std::vector<double> vals(n);
  MatT frame(n, n);
  for (int k = 0; k < n; ++k) {
    vals[k] = dec.values[idx[k]];
    for (int i = 0; i < n; ++i) frame(i, k) = q(i, idx[k]);
  }
  dec.values = vals;
  dec.frame = frame;
}

}  // namespace

SpectralDecomposition spectral(const SymMatrix& m) {
  if (!m.finite()) throw std::runtime_error("spectral: non-finite input matrix");
  int n = m.dim();
  Matrix a = m.full();
  Matrix q = Matrix::identity(n);
  double scale = 1.0 + m.max_abs();

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offdiag_norm(a) <= 1e-14 * scale * n) break;
    if (sweep == 99)
      throw std::runtime_error("spectral: Jacobi iteration failed to converge");
    for (int p = 0; p < n; ++p)
      for (int qq = p + 1; qq < n; ++qq) {
        double g = a(p, qq);
        if (std::abs(g) <= 1e-300) continue;
        double theta = (a(qq, qq) - a(p, p)) / (2.0 * g);
        double t = jacobi_t(theta);
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // A <- J^T A J on rows/columns p,qq
        for (int i = 0; i < n; ++i) {
          if (i == p || i == qq) continue;
          double aip = a(i, p), aiq = a(i, qq);
          a(i, p) = c * aip - s * aiq;
          a(i, qq) = s * aip + c * aiq;
          a(p, i) = a(i, p);
          a(qq, i) = a(i, qq);
        }
        double app = a(p, p), aqq2 = a(qq, qq);
        a(p, p) = app - t * g;
        a(qq, qq) = aqq2 + t * g;
        a(p, qq) = 0.0;
        a(qq, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          double qip = q(i, p), qiq = q(i, qq);
          q(i, p) = c * qip - s * qiq;
          q(i, qq) = s * qip + c * qiq;
        }
      }
  }

  SpectralDecomposition dec;
  dec.values.resize(n);
  for (int i = 0; i < n; ++i) dec.values[i] = a(i, i);
  sort_ascending(dec, q);
  return dec;
}

HermSpectralDecomposition spectral(const HermMatrix& m) {
  if (!m.finite()) throw std::runtime_error("spectral: non-finite input matrix");
  int n = m.dim();
  CMatrix a = m.full();
  CMatrix q = CMatrix::identity(n);
  double scale = 1.0 + m.max_abs();

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offdiag_norm(a) <= 1e-14 * scale * n) break;
    if (sweep == 99)
      throw std::runtime_error("spectral: Jacobi iteration failed to converge");
    for (int p = 0; p < n; ++p)
      for (int qq = p + 1; qq < n; ++qq) {
        cplx g = a(p, qq);
        double r = std::abs(g);
        if (r <= 1e-300) continue;
        cplx phase = g / r;
        double theta = (a(qq, qq).real() - a(p, p).real()) / (2.0 * r);
        double t = jacobi_t(theta);
        double c = 1.0 / std::sqrt(1.0 + t * t);
        cplx s = t * c * phase;
        // A <- J^* A J with J_pp = c, J_pq = s, J_qp = -conj(s), J_qq = c
        for (int i = 0; i < n; ++i) {
          if (i == p || i == qq) continue;
          cplx aip = a(i, p), aiq = a(i, qq);
          a(i, p) = c * aip - std::conj(s) * aiq;
          a(i, qq) = s * aip + c * aiq;
          a(p, i) = std::conj(a(i, p));
          a(qq, i) = std::conj(a(i, qq));
        }
        double app = a(p, p).real(), aqq2 = a(qq, qq).real();
        a(p, p) = app - t * r;
        a(qq, qq) = aqq2 + t * r;
        a(p, qq) = 0.0;
        a(qq, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          cplx qip = q(i, p), qiq = q(i, qq);
          q(i, p) = c * qip - std::conj(s) * qiq;
          q(i, qq) = s * qip + c * qiq;
        }
      }
  }

  HermSpectralDecomposition dec;
  dec.values.resize(n);
  for (int i = 0; i < n; ++i) dec.values[i] = a(i, i).real();
  sort_ascending(dec, q);
  return dec;
}

std::vector<double> eigenvalues(const SymMatrix& m) { return spectral(m).values; }
std::vector<double> eigenvalues(const HermMatrix& m) { return spectral(m).values; }

SymMatrix psd_sqrt(const SymMatrix& m) {
  SpectralDecomposition dec = spectral(m);
  std::vector<double> w(dec.values.size());
  for (size_t i = 0; i < w.size(); ++i) {
    double lam = dec.values[i];
    if (lam < -1e-10)
      throw not_psd_error("psd_sqrt: eigenvalue " + std::to_string(lam) + " below -1e-10");
    w[i] = std::sqrt(std::max(lam, 0.0));
  }
  return SymMatrix::conjugated_diagonal(dec.frame, w);
}

SymMatrix phi_embed(const HermMatrix& beta) {
  int d = beta.dim();
  SymMatrix out(2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      cplx b = beta(i, j);
      out.set(i, j, b.real());              // Re block, top-left
      out.set(d + i, d + j, b.real());      // Re block, bottom-right
      if (i != j) {
        out.set(i, d + j, b.imag());        // Im block, top-right
        out.set(j, d + i, -b.imag());       // Im is skew: (j, d+i) = -Im_ij
      }
    }
  return out;
}

Matrix phi_embed_general(const CMatrix& a) {
  int d = a.rows();
  Matrix out(2 * d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      out(i, j) = a(i, j).real();
      out(d + i, d + j) = a(i, j).real();
      out(i, d + j) = a(i, j).imag();
      out(d + i, j) = -a(i, j).imag();
    }
  return out;
}

std::vector<double> phi_embed_vec(const std::vector<cplx>& z) {
  std::vector<double> x(2 * z.size());
  for (size_t i = 0; i < z.size(); ++i) {
    x[i] = z[i].real();
    x[z.size() + i] = z[i].imag();
  }
  return x;
}

std::vector<cplx> phi_unembed_vec(const std::vector<double>& x) {
  size_t d = x.size() / 2;
  std::vector<cplx> z(d);
  for (size_t i = 0; i < d; ++i) z[i] = cplx(x[i], x[d + i]);
  return z;
}

HermMatrix phi_project(const SymMatrix& alpha) {
  int d = alpha.dim() / 2;
  HermMatrix beta(d);
  for (int i = 0; i < d; ++i) {
    beta.set(i, i, 0.5 * (alpha(i, i) + alpha(d + i, d + i)));
    for (int j = i + 1; j < d; ++j) {
      double re = 0.5 * (alpha(i, j) + alpha(d + i, d + j));
      // skew part of the top-right block; alpha is symmetric so the
      // bottom-left block is its transpose
      double im = 0.5 * (alpha(i, d + j) - alpha(j, d + i));
      beta.set(i, j, cplx(re, im));
    }
  }
  return beta;
}

}  // namespace hess
