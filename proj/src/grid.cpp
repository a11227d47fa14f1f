#include "hessian/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hessian/errors.hpp"
#include "hessian/spectral.hpp"

namespace hess {

namespace {

// Bisection for the boundary crossing on the segment x -> y, assuming
// rho(x) < 0 <= rho(y). Returns the fraction along the segment; the crossing
// point satisfies |rho| <= 1e-10 (or the bracket is at rounding width).
double segment_crossing(const DomainGeometry& dom, const std::vector<double>& x,
                        const std::vector<double>& y, std::vector<double>& hit) {
  double lo = 0.0, hi = 1.0;
  std::vector<double> p(x.size());
  auto at = [&](double t) {
    for (size_t i = 0; i < x.size(); ++i) p[i] = x[i] + t * (y[i] - x[i]);
    return rho(dom, p);
  };
  for (int it = 0; it < 120; ++it) {
    double mid = 0.5 * (lo + hi);
    double r = at(mid);
    if (std::abs(r) <= 1e-10 || hi - lo <= 1e-16) {
      lo = hi = mid;
      break;
    }
    if (r < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double t = 0.5 * (lo + hi);
  hit.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) hit[i] = x[i] + t * (y[i] - x[i]);
  return t;
}

}  // namespace

Grid build_grid(const DomainGeometry& dom, double h) {
  if (h <= 0.0) throw std::invalid_argument("build_grid: nonpositive spacing");
  int d = dom.dim;
  std::vector<double> c = domain_center(dom);

  // width of the domain along each axis through the center
  double max_width = 0.0, min_width = 1e300;
  for (int i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    std::vector<double> plus = boundary_point(dom, e);
    e[i] = -1.0;
    std::vector<double> minus = boundary_point(dom, e);
    double w = plus[i] - minus[i];
    max_width = std::max(max_width, w);
    min_width = std::min(min_width, w);
  }
  if (max_width / h < 8.0)
    throw resolution_error("build_grid: fewer than 8 nodes across the diameter");
  if (min_width < 3.0 * h)
    throw resolution_error("build_grid: domain thinner than 3h along an axis");

  Grid g;
  g.dom = dom;
  g.h = h;
  g.origin = dom.box_lo;
  g.extents.resize(d);
  size_t total = 1;
  for (int i = 0; i < d; ++i) {
    // ceil so the lattice spans the whole box (the last cell may overshoot)
    g.extents[i] = static_cast<int>(std::ceil((dom.box_hi[i] - dom.box_lo[i]) / h - 1e-9)) + 1;
    if (g.extents[i] < 2) throw resolution_error("build_grid: bounding box thinner than h");
    total *= static_cast<size_t>(g.extents[i]);
  }

  g.lattice_to_node.assign(total, -1);
  std::vector<int> coord(d, 0);
  for (size_t flat = 0; flat < total; ++flat) {
    std::vector<double> x = g.lattice_point(coord);
    if (rho(dom, x) < 0.0) {
      g.lattice_to_node[flat] = g.n_interior();
      g.node_coords.push_back(coord);
      g.node_points.push_back(std::move(x));
    }
    for (int i = d - 1; i >= 0; --i) {
      if (++coord[i] < g.extents[i]) break;
      coord[i] = 0;
    }
  }
  if (g.n_interior() == 0) throw resolution_error("build_grid: no interior nodes");

  g.arms.resize(g.n_interior());
  for (int n = 0; n < g.n_interior(); ++n) {
    g.arms[n].resize(2 * d);
    for (int axis = 0; axis < d; ++axis)
      for (int s = 0; s < 2; ++s) {
        int step = (s == 0) ? 1 : -1;
        GridArm arm;
        std::vector<int> nb = g.node_coords[n];
        nb[axis] += step;
        bool in_lattice = nb[axis] >= 0 && nb[axis] < g.extents[axis];
        int nb_id = in_lattice ? g.lattice_to_node[g.flat(nb)] : -1;
        if (nb_id >= 0) {
          arm.delta = h;
          arm.neighbor = nb_id;
        } else {
          std::vector<double> target = g.node_points[n];
          target[axis] += step * h;
          double t = segment_crossing(dom, g.node_points[n], target, arm.boundary_point);
          arm.delta = t * h;
          arm.neighbor = -1;
        }
        g.arms[n][2 * axis + s] = std::move(arm);
      }
  }
  return g;
}

LinearCombo point_value_combo(const Grid& g, const Field& phi, const std::vector<double>& x) {
  int d = g.dom.dim;
  std::vector<int> base(d);
  std::vector<double> frac(d);
  for (int i = 0; i < d; ++i) {
    double t = (x[i] - g.origin[i]) / g.h;
    if (t < -1e-9 || t > g.extents[i] - 1 + 1e-9)
      throw resolution_error("point_value_combo: interpolation stencil escapes the bounding box");
    int b = static_cast<int>(std::floor(t));
    b = std::clamp(b, 0, g.extents[i] - 2);
    base[i] = b;
    frac[i] = std::clamp(t - b, 0.0, 1.0);
  }
  LinearCombo combo;
  int corners = 1 << d;
  std::vector<int> corner(d);
  for (int mask = 0; mask < corners; ++mask) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      bool hi = mask & (1 << i);
      w *= hi ? frac[i] : 1.0 - frac[i];
      corner[i] = base[i] + (hi ? 1 : 0);
    }
    if (w <= 1e-15) continue;
    int id = g.lattice_to_node[g.flat(corner)];
    if (id >= 0) {
      combo.nodes.emplace_back(id, w);
    } else {
      // exterior corner, at most one step past the boundary: read the
      // closed-form boundary data there (fields evaluate everywhere, and the
      // corner value enters with nonnegative weight, keeping monotonicity)
      combo.constant += w * field_eval(phi, g.lattice_point(corner));
    }
  }
  return combo;
}

namespace {

struct ArmValue {
  double delta = 0.0;
  LinearCombo combo;  // value at the arm end as a combination of nodes + phi
};

ArmValue arm_from_table(const Grid& g, int node, int axis, int sign_slot, const Field& phi) {
  const GridArm& arm = g.arms[node][2 * axis + sign_slot];
  ArmValue av;
  av.delta = arm.delta;
  if (arm.neighbor >= 0)
    av.combo.nodes.emplace_back(arm.neighbor, 1.0);
  else
    av.combo.constant = field_eval(phi, arm.boundary_point);
  return av;
}

ArmValue arm_general(const Grid& g, int node, const std::vector<double>& e, double sign,
                     const Field& phi) {
  int d = g.dom.dim;
  const std::vector<double>& x = g.node_points[node];
  std::vector<double> target(d);
  for (int i = 0; i < d; ++i) target[i] = x[i] + sign * g.h * e[i];
  ArmValue av;
  if (rho(g.dom, target) < 0.0) {
    av.delta = g.h;
    av.combo = point_value_combo(g, phi, target);
  } else {
    std::vector<double> hit;
    double t = segment_crossing(g.dom, x, target, hit);
    av.delta = std::max(t, 1e-12) * g.h;
    av.combo.constant = field_eval(phi, hit);
  }
  return av;
}

// -1 if the unit vector is not axis-aligned, else the axis index.
int aligned_axis(const std::vector<double>& e) {
  for (size_t i = 0; i < e.size(); ++i)
    if (std::abs(e[i]) > 1.0 - 1e-12) return static_cast<int>(i);
  return -1;
}

}  // namespace

StencilRow control_row(const Grid& g, int node, const ControlCoefficients& coeff, double f_val,
                       const Field& phi) {
  int d = g.dom.dim;
  StencilRow row;
  row.node = node;
  row.constant = -coeff.h * f_val;

  SpectralDecomposition sd = spectral(coeff.a);
  for (int k = 0; k < d; ++k) {
    double m = sd.values[k];
    if (m <= 1e-13) continue;
    std::vector<double> e = sd.frame.column(k);
    int axis = aligned_axis(e);
    ArmValue plus, minus;
    if (axis >= 0) {
      // orient slots so "plus" follows +e regardless of the eigenvector sign
      int flip = (e[axis] < 0.0) ? 1 : 0;
      plus = arm_from_table(g, node, axis, flip, phi);
      minus = arm_from_table(g, node, axis, 1 - flip, phi);
    } else {
      plus = arm_general(g, node, e, 1.0, phi);
      minus = arm_general(g, node, e, -1.0, phi);
    }
    double denom = plus.delta + minus.delta;
    double wp = 2.0 * m / (plus.delta * denom);
    double wm = 2.0 * m / (minus.delta * denom);
    row.diag -= wp + wm;
    for (const ArmValue* av : {&plus, &minus}) {
      double w = (av == &plus) ? wp : wm;
      row.constant += w * av->combo.constant;
      for (const auto& [id, weight] : av->combo.nodes) {
        if (id == node)
          row.diag += w * weight;
        else
          row.neighbors.emplace_back(id, w * weight);
      }
    }
  }
  return row;
}

double discretize_control(const Grid& g, const std::vector<double>& u, int node,
                          const ControlCoefficients& coeff, double f_val, const Field& phi) {
  StencilRow row = control_row(g, node, coeff, f_val, phi);
  double r = row.diag * u[node] + row.constant;
  for (const auto& [id, w] : row.neighbors) r += w * u[id];
  return r;
}

}  // namespace hess
