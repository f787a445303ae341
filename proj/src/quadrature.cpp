#include "qee/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "qee/error.hpp"

namespace qee {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussLegendreRule composite_rule(const GaussLegendreRule& rule, double a, double b, int panels) {
  if (panels < 1 || !(b > a)) throw DomainError("composite_rule: need panels >= 1 and b > a");
  GaussLegendreRule out;
  const std::size_t n = rule.nodes.size();
  out.nodes.reserve(n * panels);
  out.weights.reserve(n * panels);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < n; ++i) {
      out.nodes.push_back(mid + 0.5 * h * rule.nodes[i]);
      out.weights.push_back(0.5 * h * rule.weights[i]);
    }
  }
  return out;
}

}  // namespace qee
