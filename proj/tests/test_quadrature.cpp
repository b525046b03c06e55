#include "wopsip/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wopsip;

namespace {

// Exact integral of x^m y^n over the reference triangle.
double monomial_integral(int m, int n) {
  auto factorial = [](int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  return factorial(m) * factorial(n) / factorial(m + n + 2);
}

const Vec2 refA(0.0, 0.0), refB(1.0, 0.0), refC(0.0, 1.0);

}  // namespace

TEST_CASE("rules have positive weights summing to one") {
  for (int degree : {2, 5, 10}) {
    const QuadRule& rule = triangle_rule(degree);
    CHECK(rule.exactDegree >= degree);
    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(triangle_rule(3), std::invalid_argument);
}

TEST_CASE("monomial exactness sweep up to the declared degree") {
  for (int degree : {2, 5, 10}) {
    const QuadRule& rule = triangle_rule(degree);
    for (int m = 0; m <= rule.exactDegree; ++m) {
      for (int n = 0; m + n <= rule.exactDegree; ++n) {
        const double got = integrate_on_triangle(
            [&](const Vec2& x) { return std::pow(x.x(), m) * std::pow(x.y(), n); }, refA, refB,
            refC, rule);
        CHECK(got == doctest::Approx(monomial_integral(m, n)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("named monomial values") {
  // x^2 y^3 -> 2! 3! / 7!,  x^4 y^4 -> 4! 4! / 10!
  const double got5 = integrate_on_triangle(
      [](const Vec2& x) { return x.x() * x.x() * std::pow(x.y(), 3); }, refA, refB, refC,
      triangle_rule(5));
  CHECK(got5 == doctest::Approx(1.0 / 420.0).epsilon(1e-13));
  const double got10 = integrate_on_triangle(
      [](const Vec2& x) { return std::pow(x.x(), 4) * std::pow(x.y(), 4); }, refA, refB, refC,
      triangle_rule(10));
  CHECK(got10 == doctest::Approx(1.0 / 6300.0).epsilon(1e-13));
}

TEST_CASE("constants integrate to the area") {
  const Vec2 a(0.2, 0.1), b(0.7, 0.3), c(0.4, 0.6);
  const double area = 0.5 * std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  CHECK(area == doctest::Approx(0.125).epsilon(1e-13));
  const double got =
      integrate_on_triangle([](const Vec2&) { return 1.0; }, a, b, c, triangle_rule(2));
  CHECK(got == doctest::Approx(0.125).epsilon(1e-14));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 p(uni(rng), uni(rng)), q(uni(rng), uni(rng)), r(uni(rng), uni(rng));
    const double expected =
        0.5 * std::abs((q - p).x() * (r - p).y() - (q - p).y() * (r - p).x());
    for (int degree : {2, 5, 10}) {
      const double one = integrate_on_triangle([](const Vec2&) { return 1.0; }, p, q, r,
                                               triangle_rule(degree));
      CHECK(one == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("affine integrands against the centroid formula") {
  const Vec2 a(0.1, 0.2), b(0.6, 0.25), c(0.3, 0.9);
  const Vec2 centroid = (a + b + c) / 3.0;
  const double area = 0.5 * std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  const auto f = [](const Vec2& x) { return 2.0 - 3.0 * x.x() + 0.5 * x.y(); };
  const double got = integrate_on_triangle(f, a, b, c, triangle_rule(2));
  CHECK(got == doctest::Approx(area * f(centroid)).epsilon(1e-13));
}

TEST_CASE("CR mass entries with the degree-2 rule") {
  // theta_i = 1 - 2 lambda_i on the reference triangle: int theta_i theta_j
  // = |T| delta_ij / 3.
  const QuadRule& rule = triangle_rule(2);
  const auto lambda = [](const Vec2& x) {
    return std::array<double, 3>{1.0 - x.x() - x.y(), x.x(), x.y()};
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double got = integrate_on_triangle(
          [&](const Vec2& x) {
            const auto l = lambda(x);
            return (1.0 - 2.0 * l[i]) * (1.0 - 2.0 * l[j]);
          },
          refA, refB, refC, rule);
      const double expected = (i == j) ? 0.5 / 3.0 : 0.0;
      CHECK(got == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("edge rule: averages and midpoint values") {
  // average of y^2 over the face {1/2} x (0, 1/2) is 1/12
  const Vec2 a(0.5, 0.0), b(0.5, 0.5);
  const double avg = face_average([](const Vec2& x) { return x.y() * x.y(); }, a, b);
  CHECK(avg == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

  // midpoint value equals the average for affine traces
  Face face;
  face.midpoint = 0.5 * (a + b);
  const auto affine = [](const Vec2& x) { return Vec2(1.0 + 2.0 * x.x() - x.y(), x.y()); };
  const Vec2 viaMidpoint = edge_midpoint_value(affine, face);
  const Vec2 viaAverage = face_average(affine, a, b);
  CHECK(viaMidpoint.x() == doctest::Approx(viaAverage.x()).epsilon(1e-14));
  CHECK(viaMidpoint.y() == doctest::Approx(viaAverage.y()).epsilon(1e-14));

  const auto constant = [](const Vec2&) { return Vec2(3.0, -1.0); };
  CHECK(edge_midpoint_value(constant, face).x() == 3.0);

  // the 3-point rule integrates degree-5 polynomials on a segment exactly
  const double got = face_average([](const Vec2& x) { return std::pow(x.y(), 5); }, a, b);
  CHECK(got == doctest::Approx((1.0 / 6.0) * std::pow(0.5, 6) / 0.5).epsilon(1e-14));
}
