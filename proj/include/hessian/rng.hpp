#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hessian/linalg.hpp"

// Deterministic randomness helpers. Every consumer derives its own engine
// from a (seed, stream) pair via splitmix64 so results are reproducible and
// independent of thread scheduling.

namespace hess {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Engine for stream `stream` of master seed `seed`.
inline std::mt19937_64 make_engine(uint64_t seed, uint64_t stream = 0) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ stream));
}

inline std::vector<double> gaussian_vector(std::mt19937_64& eng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = g(eng);
  return v;
}

/// Haar-distributed random orthogonal matrix via Gram-Schmidt on a Gaussian
/// matrix (QR with positive diagonal, which is Haar for this construction).
inline Matrix haar_orthogonal(std::mt19937_64& eng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix q(n, n);
  for (int col = 0; col < n; ++col) {
    std::vector<double> v(n);
    for (double& x : v) x = g(eng);
    for (int prev = 0; prev < col; ++prev) {
      double d = 0.0;
      for (int i = 0; i < n; ++i) d += q(i, prev) * v[i];
      for (int i = 0; i < n; ++i) v[i] -= d * q(i, prev);
    }
    double nv = norm2(v);
    if (nv < 1e-12) {
      // astronomically unlikely; retry this column
      --col;
      continue;
    }
    for (int i = 0; i < n; ++i) q(i, col) = v[i] / nv;
  }
  return q;
}

/// Haar-distributed random unitary matrix, same construction over C.
inline CMatrix haar_unitary(std::mt19937_64& eng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix q(n, n);
  for (int col = 0; col < n; ++col) {
    std::vector<cplx> v(n);
    for (cplx& x : v) x = cplx(g(eng), g(eng));
    for (int prev = 0; prev < col; ++prev) {
      cplx d = 0.0;
      for (int i = 0; i < n; ++i) d += std::conj(q(i, prev)) * v[i];
      for (int i = 0; i < n; ++i) v[i] -= d * q(i, prev);
    }
    double nv = 0.0;
    for (cplx x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    if (nv < 1e-12) {
      --col;
      continue;
    }
    for (int i = 0; i < n; ++i) q(i, col) = v[i] / nv;
  }
  return q;
}

/// Random symmetric matrix with i.i.d. N(0,1) entries (symmetrized).
inline SymMatrix random_symmetric(std::mt19937_64& eng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, g(eng));
  return m;
}

/// Random Hermitian matrix with N(0,1) real diagonal and complex upper part.
inline HermMatrix random_hermitian(std::mt19937_64& eng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  HermMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, g(eng));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.set(i, j, cplx(g(eng), g(eng)));
  return m;
}

}  // namespace hess
