#pragma once

#include <utility>
#include <vector>

#include "hessian/bellman.hpp"
#include "hessian/fields.hpp"
#include "hessian/geometry.hpp"
#include "hessian/linalg.hpp"

namespace hess {

/// One stencil arm from an interior node: either a full or cut step to a
/// neighboring interior node, or a cut step ending on the boundary.
struct GridArm {
  double delta = 0.0;                  // arm length (h, or cut short)
  int neighbor = -1;                   // interior node index; -1 = boundary
  std::vector<double> boundary_point;  // set when neighbor < 0
};

/// Cartesian lattice over the bounding box with interior-node indexing and a
/// per-node, per-axis cut-arm table (arm lengths clipped at the boundary by
/// bisection, with the boundary hit cached for reading boundary data).
struct Grid {
  DomainGeometry dom;
  double h = 0.0;
  std::vector<double> origin;
  std::vector<int> extents;          // lattice nodes per axis
  std::vector<int> lattice_to_node;  // flat lattice index -> interior id or -1
  std::vector<std::vector<int>> node_coords;
  std::vector<std::vector<double>> node_points;
  std::vector<std::vector<GridArm>> arms;  // [node][2*axis + (0: +e, 1: -e)]

  int n_interior() const { return static_cast<int>(node_points.size()); }
  int flat(const std::vector<int>& c) const {
    int idx = 0;
    for (size_t i = 0; i < c.size(); ++i) idx = idx * extents[i] + c[i];
    return idx;
  }
  std::vector<double> lattice_point(const std::vector<int>& c) const {
    std::vector<double> x(c.size());
    for (size_t i = 0; i < c.size(); ++i) x[i] = origin[i] + h * c[i];
    return x;
  }
};

/// Throws resolution_error when fewer than 8 nodes span the diameter or the
/// domain is thinner than 3h along a coordinate axis through the center.
Grid build_grid(const DomainGeometry& dom, double h);

/// A value read at an arbitrary point expressed as a nonnegative combination
/// of interior node values plus a constant (boundary-data contributions):
/// multilinear interpolation in the containing cell; exterior cell corners
/// read phi at their radial projection onto the boundary.
struct LinearCombo {
  std::vector<std::pair<int, double>> nodes;
  double constant = 0.0;
};
LinearCombo point_value_combo(const Grid& g, const Field& phi, const std::vector<double>& x);

/// Residual of one control at one node as an affine function of u:
/// residual(u) = diag * u[node] + sum_j weight_j * u[node_j] + constant,
/// with diag < 0 and all weights >= 0 (monotone scheme).
struct StencilRow {
  int node = -1;
  double diag = 0.0;
  std::vector<std::pair<int, double>> neighbors;
  double constant = 0.0;
};
StencilRow control_row(const Grid& g, int node, const ControlCoefficients& coeff, double f_val,
                       const Field& phi);

/// The Bellman integrand of one control at one node:
/// sum_k m_k * second difference of u along the eigendirections of a
/// (unequal cut arms, off-axis values by interpolation, boundary arms read
/// phi) minus h * f_val.
double discretize_control(const Grid& g, const std::vector<double>& u, int node,
                          const ControlCoefficients& coeff, double f_val, const Field& phi);

}  // namespace hess
