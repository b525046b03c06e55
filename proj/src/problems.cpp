#include "wopsip/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace wopsip {

namespace {

// g(t) = t^2 (t-1)^2 and derivatives.
double g0(double t) { return t * t * (t - 1.0) * (t - 1.0); }
double g1(double t) { return 2.0 * t * (t - 1.0) * (2.0 * t - 1.0); }
double g2(double t) { return 12.0 * t * t - 12.0 * t + 2.0; }
double g3(double t) { return 24.0 * t - 12.0; }

// Vertical factor k(y) and first three derivatives; k = g for the polynomial
// problem, k = g * exp(-y/delta) for the boundary layer. The exponential is
// evaluated once and distributed over the expanded derivatives.
struct VerticalFactor {
  double k, k1, k2, k3;
};

VerticalFactor poly_factor(double y) { return {g0(y), g1(y), g2(y), g3(y)}; }

VerticalFactor layer_factor(double y, double invDelta) {
  const double e = std::exp(-y * invDelta);
  const double a = invDelta;
  const double v0 = g0(y), v1 = g1(y), v2 = g2(y), v3 = g3(y);
  return {v0 * e, (v1 - a * v0) * e, (v2 - 2.0 * a * v1 + a * a * v0) * e,
          (v3 - 3.0 * a * v2 + 3.0 * a * a * v1 - a * a * a * v0) * e};
}

Problem assemble_problem(std::function<VerticalFactor(double)> factor,
                         std::function<double(const Vec2&)> pressure,
                         std::function<Vec2(const Vec2&)> pressureGradient,
                         std::string label) {
  Problem prob;
  prob.nu = 1.0;
  prob.label = std::move(label);
  prob.pressure = std::move(pressure);

  prob.velocity = [factor](const Vec2& x) {
    const auto k = factor(x.y());
    return Vec2(g0(x.x()) * k.k1, -g1(x.x()) * k.k);
  };
  prob.velocityGradient = [factor](const Vec2& x) {
    const auto k = factor(x.y());
    Eigen::Matrix2d grad;
    grad(0, 0) = g1(x.x()) * k.k1;
    grad(0, 1) = g0(x.x()) * k.k2;
    grad(1, 0) = -g2(x.x()) * k.k;
    grad(1, 1) = -g1(x.x()) * k.k1;
    return grad;
  };
  prob.forcing = [factor, gp = std::move(pressureGradient)](const Vec2& x) {
    const auto k = factor(x.y());
    const Vec2 lap(g2(x.x()) * k.k1 + g0(x.x()) * k.k3,
                   -g3(x.x()) * k.k - g1(x.x()) * k.k2);
    return Vec2(gp(x) - lap);
  };
  return prob;
}

}  // namespace

Problem polynomial_problem() {
  return assemble_problem(
      poly_factor,
      [](const Vec2& x) { return x.x() * x.x() - x.y() * x.y(); },
      [](const Vec2& x) { return Vec2(2.0 * x.x(), -2.0 * x.y()); }, "poly");
}

Problem boundary_layer_problem(double delta) {
  if (delta <= 0.0) throw std::invalid_argument("boundary layer requires delta > 0");
  const double invDelta = 1.0 / delta;
  const double shift = -delta + delta * std::exp(-invDelta);
  return assemble_problem(
      [invDelta](double y) { return layer_factor(y, invDelta); },
      [invDelta, shift](const Vec2& x) { return std::exp(-x.y() * invDelta) + shift; },
      [invDelta](const Vec2& x) {
        return Vec2(0.0, -invDelta * std::exp(-x.y() * invDelta));
      },
      "layer");
}

Problem make_problem(const std::string& name, double delta) {
  if (name == "poly") return polynomial_problem();
  if (name == "layer") return boundary_layer_problem(delta);
  throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace wopsip
