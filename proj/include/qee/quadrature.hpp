#pragma once

#include <span>
#include <vector>

namespace qee {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// Composite rule: `panels` equal panels on [a, b], each carrying `rule`.
/// Returned nodes are ascending.
GaussLegendreRule composite_rule(const GaussLegendreRule& rule, double a, double b, int panels);

template <class F>
double integrate(const GaussLegendreRule& composite, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < composite.nodes.size(); ++i) sum += composite.weights[i] * f(composite.nodes[i]);
  return sum;
}

}  // namespace qee
