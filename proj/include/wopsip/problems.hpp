#pragma once

#include "wopsip/mesh.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace wopsip {

/// Manufactured Stokes solution on the unit square: u = rot(phi) is exactly
/// divergence free and vanishes on the boundary, f = -nu*lap(u) + grad(p).
struct Problem {
  std::function<Vec2(const Vec2&)> velocity;
  std::function<Eigen::Matrix2d(const Vec2&)> velocityGradient;  // (i,j) = d u_i / d x_j
  std::function<double(const Vec2&)> pressure;
  std::function<Vec2(const Vec2&)> forcing;
  double nu = 1.0;
  std::string label;
};

/// phi = x^2(x-1)^2 y^2(y-1)^2, p = x^2 - y^2.
Problem polynomial_problem();

/// phi = x^2(x-1)^2 y^2(y-1)^2 exp(-y/delta),
/// p = exp(-y/delta) - delta + delta*exp(-1/delta); boundary layer at y = 0.
Problem boundary_layer_problem(double delta);

Problem make_problem(const std::string& name, double delta);

}  // namespace wopsip
