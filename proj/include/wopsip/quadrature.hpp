#pragma once

#include "wopsip/mesh.hpp"

#include <array>
#include <type_traits>
#include <utility>
#include <vector>

namespace wopsip {

/// Quadrature rule on the reference triangle, stored in barycentric
/// coordinates with weights summing to 1 (scale by |T| on application).
struct QuadRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int exactDegree = 0;
};

/// Supported degrees: 2 (mass terms), 5 (load assembly), 10 (error norms).
const QuadRule& triangle_rule(int degree);

/// Gauss points/weights on [0,1].
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// 3-point Gauss rule on a segment, exact for degree 5 traces.
const EdgeRule& edge_rule();

namespace detail {
template <typename T>
T zero_value() {
  if constexpr (std::is_arithmetic_v<T>)
    return T(0);
  else
    return T::Zero();
}
}  // namespace detail

template <typename F>
auto integrate_on_triangle(F&& f, const Vec2& a, const Vec2& b, const Vec2& c,
                           const QuadRule& rule) {
  const double area = 0.5 * std::abs((b.x() - a.x()) * (c.y() - a.y()) -
                                     (b.y() - a.y()) * (c.x() - a.x()));
  using R = std::decay_t<decltype(f(a))>;
  R acc = detail::zero_value<R>();
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const auto& l = rule.points[q];
    const Vec2 x = l[0] * a + l[1] * b + l[2] * c;
    acc += rule.weights[q] * f(x);
  }
  return R(acc * area);
}

template <typename F>
auto integrate_on_triangle(F&& f, const Mesh& mesh, int t, const QuadRule& rule) {
  const auto& tri = mesh.triangles[t];
  return integrate_on_triangle(std::forward<F>(f), mesh.vertices[tri.vertexIds[0]],
                               mesh.vertices[tri.vertexIds[1]], mesh.vertices[tri.vertexIds[2]],
                               rule);
}

/// Average of f over the segment [a, b] (3-point Gauss).
template <typename F>
auto face_average(F&& f, const Vec2& a, const Vec2& b) {
  const EdgeRule& rule = edge_rule();
  using R = std::decay_t<decltype(f(a))>;
  R acc = detail::zero_value<R>();
  for (std::size_t q = 0; q < rule.points.size(); ++q)
    acc += rule.weights[q] * f(Vec2(a + rule.points[q] * (b - a)));
  return acc;
}

/// Value of g at the face midpoint; realizes the face average of affine traces.
template <typename G>
auto edge_midpoint_value(G&& g, const Face& face) {
  return g(face.midpoint);
}

}  // namespace wopsip
