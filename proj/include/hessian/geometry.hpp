#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hessian/bellman.hpp"
#include "hessian/linalg.hpp"
#include "hessian/operators.hpp"
#include "hessian/rng.hpp"

namespace hess {

/// Built-in domain shapes with exact analytic defining functions.
struct Shape {
  enum class Kind { ball, ellipsoid, poly_level };
  struct Term {
    double coeff = 0.0;
    std::vector<int> expo;  // one exponent per coordinate
  };

  Kind kind = Kind::ball;
  std::vector<double> center;     // ball / ellipsoid
  double radius = 1.0;            // ball
  std::vector<double> semi_axes;  // ellipsoid
  std::vector<Term> terms;        // poly_level: rho = sum coeff * prod x^e
};

/// A bounded domain D = {rho < 0} with smooth rho and nonvanishing gradient
/// on the boundary. Star-shaped around its center by construction.
struct DomainGeometry {
  Shape shape;
  int dim = 0;  // real ambient dimension (complex domains store 2d)
  Realm realm = Realm::real_case;
  std::vector<double> box_lo, box_hi;
};

DomainGeometry make_ball(const std::vector<double>& center, double radius,
                         Realm realm = Realm::real_case);
DomainGeometry make_ellipsoid(const std::vector<double>& center,
                              const std::vector<double>& semi_axes);
DomainGeometry make_poly_domain(int dim, const std::vector<Shape::Term>& terms,
                                const std::vector<double>& box_lo,
                                const std::vector<double>& box_hi,
                                Realm realm = Realm::real_case);

double rho(const DomainGeometry& dom, const std::vector<double>& x);
std::vector<double> rho_grad(const DomainGeometry& dom, const std::vector<double>& x);
SymMatrix rho_hess(const DomainGeometry& dom, const std::vector<double>& x);

std::vector<double> domain_center(const DomainGeometry& dom);
double domain_diameter_bound(const DomainGeometry& dom);

/// Boundary point along the ray from the center through `direction`
/// (bisection; |rho| <= 1e-12 at the result).
std::vector<double> boundary_point(const DomainGeometry& dom,
                                   const std::vector<double>& direction);
std::vector<double> random_direction(std::mt19937_64& eng, int dim);

/// Second fundamental form at a boundary point, in an orthonormal tangent
/// frame, oriented so that a convex domain has positive curvature.
struct BoundaryFrame {
  std::vector<double> point;
  SymMatrix ii;          // (d-1) x (d-1)
  Matrix tangent_frame;  // d x (d-1), orthonormal columns
  std::vector<double> normal;  // unit outward normal
  double grad_norm = 0.0;      // |rho_x|
};
BoundaryFrame second_fundamental_form(const DomainGeometry& dom, const std::vector<double>& x);

/// II embedded into the full space with weight t on the normal direction:
/// sum II_ab t_a t_b^T + t n n^T.
SymMatrix embed_with_normal(const BoundaryFrame& bf, double t);

/// Levi form (complex Hessian restricted to the complex tangent space) for
/// complex-realm domains, plus the unit complex normal.
struct LeviFrame {
  std::vector<double> point;  // realified coordinates
  HermMatrix levi;            // (d-1) x (d-1)
  CMatrix tangent_frame;      // d x (d-1), unitary columns
  std::vector<cplx> normal;   // unit complex normal
  double grad_norm = 0.0;     // |rho_z|
};
LeviFrame levi_form(const DomainGeometry& dom, const std::vector<double>& x);
HermMatrix embed_with_normal(const LeviFrame& lf, double t);

/// Complex Hessian rho_{z zbar} of a complex-realm domain at a realified
/// point, derived from the real derivatives by the Wirtinger identities.
HermMatrix rho_complex_hess(const DomainGeometry& dom, const std::vector<double>& x);
std::vector<cplx> rho_complex_grad(const DomainGeometry& dom, const std::vector<double>& x);

struct ConvexityReport {
  bool pass = false;
  std::vector<double> worst_point;
  double witness_t = 0.0;  // largest witness needed over the samples
  // For sigma-cone operators: did the closed-form boundary test
  // sigma_{k-1,d-1}(II) > 0 agree with the direct cone test at every sample?
  std::optional<bool> sigma_shortcut_agrees;
  // For mu-cone operators in the complex realm: agreement of the
  // smallest-k-curvature-sum test with the direct cone test.
  std::optional<bool> mu_shortcut_agrees;
  int n_samples = 0;
};
/// Strict cone-convexity of the boundary: at each sampled x some finite t
/// puts II + t P_n inside the cone (doubling search up to t_max).
ConvexityReport check_strict_gamma_convexity(const DomainGeometry& dom, const HessianOperator& f,
                                             int n_boundary_samples, double t_max,
                                             uint64_t seed = 1);
/// Complex counterpart via the Levi form; also reports agreement with the
/// eigenvalue-sum test for mu-cone operators.
ConvexityReport check_strict_theta_pseudoconvexity(const DomainGeometry& dom,
                                                   const HessianOperator& g_complex,
                                                   int n_boundary_samples, double t_max,
                                                   uint64_t seed = 1);

struct BarrierCertificate {
  double C = 0.0;
  double epsilon = 0.0;
  double worst_residual = 0.0;  // max over samples of sup_a tr(a psi_xx)
  int sample_count = 0;
};
/// psi = -C rho with C found by doubling until sup over controls and sampled
/// interior points of tr(a psi_xx) <= -1 and |psi_x| >= 1 on the boundary.
/// Throws certification_failure when C exceeds 2^32.
BarrierCertificate build_barrier(const DomainGeometry& dom, const ControlSet& controls,
                                 int n_interior_samples = 512, int n_boundary_samples = 256,
                                 uint64_t seed = 1);

/// Barrier field values psi = -C rho.
double barrier_value(const DomainGeometry& dom, const BarrierCertificate& cert,
                     const std::vector<double>& x);
std::vector<double> barrier_grad(const DomainGeometry& dom, const BarrierCertificate& cert,
                                 const std::vector<double>& x);

}  // namespace hess
