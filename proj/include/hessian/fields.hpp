#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

// Closed-form scalar fields for right-hand sides and boundary data: constant,
// polynomial, radial profile, and powered positive-part max-composition
// (which covers |x_1|^p and the flat-bottomed boundary data of the
// homogeneous Monge-Ampere fixture). Everything evaluates exactly at
// arbitrary points, including off-grid boundary hits.

namespace hess {

struct Field {
  enum class Kind { constant, polynomial, radial, max_comp };
  struct Term {
    double coeff = 0.0;
    std::vector<int> expo;
  };

  Kind kind = Kind::constant;
  double value = 0.0;                // constant
  std::vector<Term> terms;           // polynomial: sum coeff * prod x^e
  std::vector<double> center;        // radial
  std::vector<double> radial_coeffs; // sum_j c_j * |x - center|^(2j)
  std::vector<Field> components;     // max_comp
  double power = 1.0;                // max_comp: [max_i (f_i)^+]^power
};

inline Field constant_field(double v) {
  Field f;
  f.kind = Field::Kind::constant;
  f.value = v;
  return f;
}

inline Field polynomial_field(std::vector<Field::Term> terms) {
  Field f;
  f.kind = Field::Kind::polynomial;
  f.terms = std::move(terms);
  return f;
}

inline Field radial_field(std::vector<double> center, std::vector<double> coeffs) {
  Field f;
  f.kind = Field::Kind::radial;
  f.center = std::move(center);
  f.radial_coeffs = std::move(coeffs);
  return f;
}

inline Field max_comp_field(std::vector<Field> components, double power) {
  if (components.empty()) throw std::invalid_argument("max_comp_field: no components");
  Field f;
  f.kind = Field::Kind::max_comp;
  f.components = std::move(components);
  f.power = power;
  return f;
}

inline double field_eval(const Field& f, const std::vector<double>& x) {
  switch (f.kind) {
    case Field::Kind::constant:
      return f.value;
    case Field::Kind::polynomial: {
      double s = 0.0;
      for (const Field::Term& t : f.terms) {
        double v = t.coeff;
        for (size_t i = 0; i < x.size(); ++i)
          for (int e = 0; e < t.expo[i]; ++e) v *= x[i];
        s += v;
      }
      return s;
    }
    case Field::Kind::radial: {
      double r2 = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - f.center[i];
        r2 += d * d;
      }
      double s = 0.0, p = 1.0;
      for (double c : f.radial_coeffs) {
        s += c * p;
        p *= r2;
      }
      return s;
    }
    case Field::Kind::max_comp: {
      double m = 0.0;
      for (const Field& c : f.components) m = std::max(m, field_eval(c, x));
      return std::pow(m, f.power);
    }
  }
  return 0.0;
}

}  // namespace hess
