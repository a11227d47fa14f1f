#pragma once

#include <vector>

#include "hessian/linalg.hpp"

namespace hess {

/// Eigen-decomposition M = Q diag(values) Q^T (or U diag U^* in the
/// Hermitian case). Eigenvalues ascending, frame columns orthonormal.
struct SpectralDecomposition {
  std::vector<double> values;
  Matrix frame;  // real symmetric input
};

struct HermSpectralDecomposition {
  std::vector<double> values;
  CMatrix frame;  // Hermitian input
};

/// Cyclic Jacobi diagonalization. Throws std::runtime_error on
/// non-convergence (does not happen for finite input at these sizes).
SpectralDecomposition spectral(const SymMatrix& m);
HermSpectralDecomposition spectral(const HermMatrix& m);

/// Eigenvalues only, ascending.
std::vector<double> eigenvalues(const SymMatrix& m);
std::vector<double> eigenvalues(const HermMatrix& m);

/// Symmetric PSD square root. Eigenvalues in [-1e-10, 0) are clamped to 0;
/// anything below that throws not_psd_error.
SymMatrix psd_sqrt(const SymMatrix& m);

/// Real embedding of a Hermitian matrix:
/// beta -> [[Re beta, Im beta], [-Im beta, Re beta]].
SymMatrix phi_embed(const HermMatrix& beta);

/// Same block embedding for a general complex matrix (used by the
/// homomorphism property tests).
Matrix phi_embed_general(const CMatrix& a);

/// (Re z, Im z) stacking of a complex vector.
std::vector<double> phi_embed_vec(const std::vector<cplx>& z);
std::vector<cplx> phi_unembed_vec(const std::vector<double>& x);

/// Orthogonal projection of a symmetric 2d x 2d matrix onto the embedded
/// Hermitian subspace, expressed back in Hermitian coordinates:
/// blocks [[A, B], [C, D]] -> Re = (A + D)/2, Im = (B - B^T... ) skew part.
/// For matrices already of the form phi_embed(beta) this recovers beta.
HermMatrix phi_project(const SymMatrix& alpha);

}  // namespace hess
