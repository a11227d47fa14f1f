#pragma once

#include <vector>

namespace hess {

/// All real roots (with multiplicity, ascending) of a polynomial that is
/// known to be real-rooted. Coefficients are in ascending degree order,
/// c[0] + c[1] t + ... + c[n] t^n with c[n] != 0 after trimming.
///
/// Throws hyperbolicity_violation if the expected root count cannot be
/// recovered, which for the built-in hyperbolic polynomials indicates a bug
/// upstream rather than a genuinely complex root pair.
std::vector<double> real_rooted_roots(std::vector<double> coeffs);

/// Evaluate a polynomial (ascending coefficients) by Horner's rule.
double poly_eval(const std::vector<double>& coeffs, double t);

/// Coefficients of the derivative polynomial.
std::vector<double> poly_derivative(const std::vector<double>& coeffs);

}  // namespace hess
