#include "wopsip/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wopsip {

namespace {

// Gauss-Legendre on [0,1] by Newton iteration on P_n.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // node on [-1,1]
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = 0.5 * (1.0 + t);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);  // already scaled for unit interval
  }
  return {x, w};
}

void push_orbit(QuadRule& rule, const std::array<double, 3>& l, double w) {
  // All six permutations, weight split evenly.
  const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                 {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& p : perms) {
    rule.points.push_back({l[p[0]], l[p[1]], l[p[2]]});
    rule.weights.push_back(w / 6.0);
  }
}

QuadRule make_degree2() {
  QuadRule rule;
  rule.exactDegree = 2;
  rule.points = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
  rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return rule;
}

QuadRule make_degree5() {
  // Radon's 7-point rule.
  QuadRule rule;
  rule.exactDegree = 5;
  const double s15 = std::sqrt(15.0);
  rule.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  rule.weights.push_back(9.0 / 40.0);
  const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
  const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
  for (const auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
    rule.points.push_back({1.0 - 2.0 * a, a, a});
    rule.points.push_back({a, 1.0 - 2.0 * a, a});
    rule.points.push_back({a, a, 1.0 - 2.0 * a});
    rule.weights.push_back(w);
    rule.weights.push_back(w);
    rule.weights.push_back(w);
  }
  return rule;
}

// Conical product of two 6-point Gauss rules, symmetrised over the triangle's
// vertex permutations. Exact for total degree 10 with positive weights.
QuadRule make_degree10() {
  QuadRule rule;
  rule.exactDegree = 10;
  const auto [x, wx] = gauss_legendre_01(6);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double xi = x[i];
      const double eta = x[j] * (1.0 - xi);
      const double w = 2.0 * wx[i] * wx[j] * (1.0 - xi);  // x2 normalises to sum 1
      push_orbit(rule, {1.0 - xi - eta, xi, eta}, w);
    }
  }
  return rule;
}

}  // namespace

const QuadRule& triangle_rule(int degree) {
  static const QuadRule deg2 = make_degree2();
  static const QuadRule deg5 = make_degree5();
  static const QuadRule deg10 = make_degree10();
  switch (degree) {
    case 2: return deg2;
    case 5: return deg5;
    case 10: return deg10;
    default: throw std::invalid_argument("unsupported quadrature degree");
  }
}

const EdgeRule& edge_rule() {
  static const EdgeRule rule = [] {
    EdgeRule r;
    const double s = 0.5 * std::sqrt(0.6);
    r.points = {0.5 - s, 0.5, 0.5 + s};
    r.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    return r;
  }();
  return rule;
}

}  // namespace wopsip
