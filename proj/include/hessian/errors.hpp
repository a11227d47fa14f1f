#pragma once

#include <stdexcept>
#include <string>

namespace hess {

/// A matrix lies outside the closure of the cone required by the operation.
/// Carries the classifying minimum (most negative generalized eigenvalue).
class cone_violation : public std::runtime_error {
 public:
  cone_violation(const std::string& what, double margin)
      : std::runtime_error(what + " (margin " + std::to_string(margin) + ")"), margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

/// Eigenvalue below the PSD clamping threshold.
class not_psd_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Root finder could not produce the expected number of real roots.
class hyperbolicity_violation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gradient requested at a point where the operator is not differentiable
/// (minimal-eigenvalue kind at an eigenvalue crossing).
class non_differentiable_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Control with vanishing gradient trace; contradicts the trace lower bound
/// tr(grad F) >= F(I) > 0 on the open cone, so this flags bad input.
class degenerate_control_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid too coarse for the domain.
class resolution_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Barrier search exhausted without producing a certificate.
class certification_failure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hess
