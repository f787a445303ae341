#pragma once

// q-deformed numbers, q-Hermite polynomials and their orthogonality weight
// v(x|q) on the standardized axis (zero mean, unit variance).

#include <optional>
#include <vector>

#include "qee/quadrature.hpp"

namespace qee {

/// Interpolation parameter, 0 <= q <= 1 (q = 1 Gaussian, q = 0 semicircle).
class QValue {
 public:
  explicit QValue(double q);
  double value() const noexcept { return q_; }
  operator double() const noexcept { return q_; }

 private:
  double q_;
};

/// Above this q the weight is replaced by the standard normal density.
inline constexpr double kGaussianThreshold = 0.999;

struct WeightSettings {
  /// Number of factors kept in the infinite product; nullopt picks it from q.
  std::optional<int> product_truncation;
  /// Total Gauss-Legendre nodes used for integrals over the support (>= 16).
  int quadrature_points = 2048;
  /// Agreement required between the full and half-resolution normalization.
  double normalization_tolerance = 1e-10;

  void validate() const;
};

/// [n]_q = 1 + q + ... + q^(n-1).
double q_number(int n, QValue q);
/// [n]_q! = prod_{j=1..n} [j]_q, [0]_q! = 1.
double q_factorial(int n, QValue q);
/// H_n(x|q) from x H_n = H_{n+1} + [n]_q H_{n-1}, H_0 = 1, H_{-1} = 0.
double q_hermite(int n, double x, QValue q);

bool uses_gaussian_limit(QValue q) noexcept;

/// x0 = 2 / sqrt(1 - q); +inf in the Gaussian limit.
double support_bound(QValue q) noexcept;

/// Factor count used for the product at this q.
int product_terms(QValue q, const WeightSettings& settings = {});

/// sqrt(1 - x^2/x0^2) * prod_k [1 - 4 (x^2/x0^2) / (2 + q^k + q^-k)].
/// Throws DomainError for q = 1 (use the Gaussian form) and |x| > x0.
double weight_unnormalized(double x, QValue q, const WeightSettings& settings = {});

/// N_q with integral of N_q * weight_unnormalized over [-x0, x0] equal to 1.
/// Memoized per (q to 12 digits, settings); thread safe.
double normalization_constant(QValue q, const WeightSettings& settings = {});

/// Normalized v(x|q). Exact standard normal at q = 1 (and above the Gaussian
/// threshold), exact unit-variance semicircle at q = 0, zero outside support.
double weight_pdf(double x, QValue q, const WeightSettings& settings = {});

/// Integer coefficients (ascending powers of q) of mu_{2n}(q); exact division
/// of the signed binomial sum by (1 - q)^n.
std::vector<double> moment_polynomial(int n);

/// mu_{2n}(q) = (1-q)^-n sum_{r=-n..n} C(2n, n+r) (-1)^r q^{r(r-1)/2};
/// equals (2n-1)!! at q = 1.
double moment_closed_form(int n, QValue q);

/// Nodes/weights integrating f(x) v(x|q) dx over the support: the returned
/// weights already include v. In the bounded case x = x0 sin(theta) removes
/// the square-root endpoints; the Gaussian limit integrates over |x| <= 12.
GaussLegendreRule weighted_rule(QValue q, const WeightSettings& settings = {});

template <class F>
double integrate_weighted(QValue q, F&& f, const WeightSettings& settings = {}) {
  return integrate(weighted_rule(q, settings), f);
}

}  // namespace qee
