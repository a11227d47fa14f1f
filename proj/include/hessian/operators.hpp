#pragma once

#include <vector>

#include "hessian/linalg.hpp"

namespace hess {

enum class Realm { real_case, complex_case };

/// Descriptor of a Hessian operator: a polynomial hyperbolic with respect to
/// the identity (elementary symmetric sigma_k, subset-sum product mu_k, and
/// their I-directional derivatives), or a 1-homogeneous superlinear wrapper
/// built from such polynomials (m-th root, quotient root, minimal
/// generalized eigenvalue, geometric mean), plus the problem-level
/// transforms (constant translation, complex-to-real lift).
///
/// All kinds are invariant under orthogonal (resp. unitary) conjugation and
/// therefore functions of the matrix spectrum alone; evaluation goes through
/// one eigen-decomposition.
struct HessianOperator {
  enum class Kind {
    polynomial,       // scale * family polynomial, possibly I-differentiated
    normalized_root,  // H^(1/m) of an m-homogeneous polynomial base
    quotient,         // (H / H^(k))^(1/k)
    min_eigenvalue,   // smallest generalized eigenvalue of the base
    geometric_mean,   // (prod F_i)^(1/n) of 1-homogeneous components
    translated,       // M -> F(M + g) for a fixed shift g
    lifted            // real 2d x 2d operator F(alpha) = G(Phi^-1 alpha)
  };
  enum class Family { sigma, mu };

  Kind kind = Kind::polynomial;
  Realm realm = Realm::real_case;
  int dim = 0;  // dimension of the matrices this operator accepts

  // polynomial payload
  Family family = Family::sigma;
  int order = 0;   // the k of sigma_k / mu_k (sigma derivatives fold into order)
  int deriv = 0;   // number of I-directional derivatives applied (mu only)
  double scale = 1.0;

  int param = 0;                        // k of the quotient kind
  std::vector<HessianOperator> parts;   // base operator(s) / mean components
  SymMatrix shift;                      // translated, real realm
  HermMatrix cshift;                    // translated, complex realm
};

// ---- factories ----
HessianOperator sigma_operator(int k, int d, Realm realm = Realm::real_case);
HessianOperator det_operator(int d, Realm realm = Realm::real_case);
HessianOperator mu_operator(int k, int d, Realm realm = Realm::real_case);
/// j-th derivative in the identity direction of a polynomial kind; j = 0 is
/// the identity transform.
HessianOperator derivative_operator(const HessianOperator& h, int j);
/// 1-homogeneous H^(1/m) wrapper of an m-homogeneous polynomial.
HessianOperator normalized_root(const HessianOperator& h);
/// 1-homogeneous (H / H^(k))^(1/k) quotient wrapper.
HessianOperator quotient_operator(const HessianOperator& h, int k);
HessianOperator min_eigenvalue_operator(const HessianOperator& h);
HessianOperator geometric_mean_operator(const std::vector<HessianOperator>& components);
HessianOperator translated_operator(const HessianOperator& f, const SymMatrix& g);
HessianOperator translated_operator(const HessianOperator& f, const HermMatrix& g);
/// Real operator on 2d x 2d matrices representing a complex operator G
/// through the block embedding Phi.
HessianOperator lifted_operator(const HessianOperator& g_complex);

// ---- structure queries ----
bool is_polynomial_kind(const HessianOperator& op);
/// Homogeneity degree: m for polynomial kinds, 1 for the wrappers.
int degree(const HessianOperator& op);
double value_at_identity(const HessianOperator& op);

// ---- evaluation ----
double evaluate(const HessianOperator& op, const SymMatrix& m);
double evaluate(const HessianOperator& op, const HermMatrix& m);  // complex realm

/// Gradient with respect to the matrix entries; symmetric PSD on the open
/// cone with trace equal to the I-directional derivative.
SymMatrix gradient(const HessianOperator& op, const SymMatrix& m);
HermMatrix gradient(const HessianOperator& op, const HermMatrix& m);

/// I-directional derivative d/dt F(M + tI) at t = 0.
double identity_derivative(const HessianOperator& op, const SymMatrix& m);

// ---- cone tests ----
enum class ConeClass { inside, boundary, outside };
struct ConeResult {
  ConeClass cls;
  double margin;  // the classifying minimum (a generalized eigenvalue)
};
ConeResult in_cone(const HessianOperator& op, const SymMatrix& m);
ConeResult in_cone(const HessianOperator& op, const HermMatrix& m);
double cone_margin(const HessianOperator& op, const SymMatrix& m);
double cone_margin(const HessianOperator& op, const HermMatrix& m);

// ---- generalized eigenvalues ----
struct HyperbolicEigenvalues {
  std::vector<double> values;  // ascending, m of them
};
/// Negatives of the roots of t -> H(M + tI), computed by sampling the
/// polynomial at Chebyshev-spaced points and re-expanding (an evaluation
/// route independent of the closed-form coefficients used internally).
HyperbolicEigenvalues garding_eigenvalues(const HessianOperator& h, const SymMatrix& m);
HyperbolicEigenvalues garding_eigenvalues(const HessianOperator& h, const HermMatrix& m);

/// Same quantities from the closed-form coefficients of H(M + tI)
/// (fast path used by cone tests and the minimal-eigenvalue kind).
std::vector<double> garding_eigenvalues_exact(const HessianOperator& h,
                                              const std::vector<double>& matrix_eigs);

/// Elementary symmetric polynomials e_0..e_n of the given values.
std::vector<double> elementary_symmetric(const std::vector<double>& x);

}  // namespace hess
