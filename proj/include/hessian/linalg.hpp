#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Dense small-dimension linear algebra used throughout the solver.
// Matrices here are tiny (d <= ~32); everything is stored in plain
// std::vector<double> and operations are written for clarity, not
// asymptotic speed.

namespace hess {

using cplx = std::complex<double>;

class SymMatrix;
class HermMatrix;

/// General (not necessarily symmetric) dense real matrix, row-major.
/// Mostly used for eigenvector frames and tangent bases.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return v_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return v_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        double a = (*this)(i, k);
        if (a == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  std::vector<double> column(int j) const {
    std::vector<double> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> v_;
};

/// Dense complex matrix, row-major; used for unitary frames.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols) {}

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cplx& operator()(int i, int j) { return v_[static_cast<size_t>(i) * cols_ + j]; }
  cplx operator()(int i, int j) const { return v_[static_cast<size_t>(i) * cols_ + j]; }

  CMatrix adjoint() const {
    CMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  CMatrix operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("CMatrix product shape mismatch");
    CMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        cplx a = (*this)(i, k);
        if (a == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> v_;
};

/// Real symmetric d x d matrix, packed upper-triangular storage.
/// Symmetry holds by construction: there is a single stored triangle.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : dim_(dim), v_(static_cast<size_t>(dim) * (dim + 1) / 2, 0.0) {}

  static SymMatrix identity(int dim) {
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
  }

  static SymMatrix diagonal(const std::vector<double>& d) {
    SymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[i]);
    return m;
  }

  /// Symmetrizes an arbitrary square matrix: (A + A^T)/2.
  static SymMatrix from_full(const Matrix& a) {
    SymMatrix m(a.rows());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = i; j < a.cols(); ++j) m.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    return m;
  }

  /// Q diag(w) Q^T for a frame Q given by columns.
  static SymMatrix conjugated_diagonal(const Matrix& q, const std::vector<double>& w) {
    int n = q.rows();
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += q(i, k) * w[k] * q(j, k);
        m.set(i, j, s);
      }
    return m;
  }

  int dim() const { return dim_; }

  double operator()(int i, int j) const { return v_[index(i, j)]; }
  void set(int i, int j, double x) { v_[index(i, j)] = x; }
  void add(int i, int j, double x) { v_[index(i, j)] += x; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Frobenius inner product tr(A B).
  double dot(const SymMatrix& o) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      s += (*this)(i, i) * o(i, i);
      for (int j = i + 1; j < dim_; ++j) s += 2.0 * (*this)(i, j) * o(i, j);
    }
    return s;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  double frob_norm() const { return std::sqrt(dot(*this)); }

  bool finite() const {
    for (double x : v_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  SymMatrix operator+(const SymMatrix& o) const {
    SymMatrix r = *this;
    for (size_t k = 0; k < v_.size(); ++k) r.v_[k] += o.v_[k];
    return r;
  }
  SymMatrix operator-(const SymMatrix& o) const {
    SymMatrix r = *this;
    for (size_t k = 0; k < v_.size(); ++k) r.v_[k] -= o.v_[k];
    return r;
  }
  SymMatrix operator*(double t) const {
    SymMatrix r = *this;
    for (double& x : r.v_) x *= t;
    return r;
  }

  SymMatrix plus_scaled_identity(double t) const {
    SymMatrix r = *this;
    for (int i = 0; i < dim_; ++i) r.add(i, i, t);
    return r;
  }

  Matrix full() const {
    Matrix m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  /// Quadratic form x^T M x.
  double quad(const std::vector<double>& x) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      s += (*this)(i, i) * x[i] * x[i];
      for (int j = i + 1; j < dim_; ++j) s += 2.0 * (*this)(i, j) * x[i] * x[j];
    }
    return s;
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(dim_, 0.0);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  const std::vector<double>& packed() const { return v_; }
  std::vector<double>& packed() { return v_; }

 private:
  size_t index(int i, int j) const {
    if (i > j) std::swap(i, j);
    // row i, col j, upper triangle row-major
    return static_cast<size_t>(i) * dim_ - static_cast<size_t>(i) * (i - 1) / 2 + (j - i);
  }

  int dim_ = 0;
  std::vector<double> v_;
};

inline SymMatrix operator*(double t, const SymMatrix& m) { return m * t; }

/// Hermitian d x d matrix: real diagonal plus strict upper triangle of
/// complex entries. Stored split so the real embedding is a copy.
class HermMatrix {
 public:
  HermMatrix() = default;
  explicit HermMatrix(int dim)
      : dim_(dim), diag_(dim, 0.0), upper_(static_cast<size_t>(dim) * (dim - 1) / 2) {}

  static HermMatrix identity(int dim) {
    HermMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.diag_[i] = 1.0;
    return m;
  }

  static HermMatrix diagonal(const std::vector<double>& d) {
    HermMatrix m(static_cast<int>(d.size()));
    m.diag_ = d;
    return m;
  }

  /// Hermitian part (A + A^*)/2 of an arbitrary complex square matrix.
  static HermMatrix from_full(const CMatrix& a) {
    HermMatrix m(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
      m.diag_[i] = 0.5 * (a(i, i) + std::conj(a(i, i))).real();
      for (int j = i + 1; j < a.cols(); ++j)
        m.set(i, j, 0.5 * (a(i, j) + std::conj(a(j, i))));
    }
    return m;
  }

  static HermMatrix conjugated_diagonal(const CMatrix& u, const std::vector<double>& w) {
    int n = u.rows();
    HermMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < n; ++k) s += u(i, k) * w[k] * std::conj(u(j, k));
        if (i == j)
          m.diag_[i] = s.real();
        else
          m.set(i, j, s);
      }
    return m;
  }

  int dim() const { return dim_; }

  cplx operator()(int i, int j) const {
    if (i == j) return diag_[i];
    if (i < j) return upper_[index(i, j)];
    return std::conj(upper_[index(j, i)]);
  }
  void set(int i, int j, cplx x) {
    if (i == j) {
      diag_[i] = x.real();
    } else if (i < j) {
      upper_[index(i, j)] = x;
    } else {
      upper_[index(j, i)] = std::conj(x);
    }
  }

  double trace() const {
    double t = 0.0;
    for (double x : diag_) t += x;
    return t;
  }

  /// Real inner product tr(A B) for Hermitian A, B.
  double dot(const HermMatrix& o) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += diag_[i] * o.diag_[i];
    for (size_t k = 0; k < upper_.size(); ++k)
      s += 2.0 * (upper_[k].real() * o.upper_[k].real() + upper_[k].imag() * o.upper_[k].imag());
    return s;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : diag_) m = std::max(m, std::abs(x));
    for (cplx z : upper_) m = std::max({m, std::abs(z.real()), std::abs(z.imag())});
    return m;
  }

  bool finite() const {
    for (double x : diag_)
      if (!std::isfinite(x)) return false;
    for (cplx z : upper_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  HermMatrix operator+(const HermMatrix& o) const {
    HermMatrix r = *this;
    for (int i = 0; i < dim_; ++i) r.diag_[i] += o.diag_[i];
    for (size_t k = 0; k < upper_.size(); ++k) r.upper_[k] += o.upper_[k];
    return r;
  }
  HermMatrix operator-(const HermMatrix& o) const {
    HermMatrix r = *this;
    for (int i = 0; i < dim_; ++i) r.diag_[i] -= o.diag_[i];
    for (size_t k = 0; k < upper_.size(); ++k) r.upper_[k] -= o.upper_[k];
    return r;
  }
  HermMatrix operator*(double t) const {
    HermMatrix r = *this;
    for (double& x : r.diag_) x *= t;
    for (cplx& z : r.upper_) z *= t;
    return r;
  }

  HermMatrix plus_scaled_identity(double t) const {
    HermMatrix r = *this;
    for (double& x : r.diag_) x += t;
    return r;
  }

  CMatrix full() const {
    CMatrix m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

 private:
  size_t index(int i, int j) const {
    // strict upper triangle, row-major
    return static_cast<size_t>(i) * dim_ - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1);
  }

  int dim_ = 0;
  std::vector<double> diag_;
  std::vector<cplx> upper_;
};

inline HermMatrix operator*(double t, const HermMatrix& m) { return m * t; }

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace hess
