#include "qee/qfunc.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "qee/error.hpp"

namespace qee {

namespace {

constexpr double kProductTolerance = 1e-14;
constexpr int kMaxProductTerms = 100000;
constexpr int kPanelNodes = 32;
constexpr double kGaussianCutoff = 12.0;

// u = x^2 / x0^2 in [0, 1]. Bracket rewritten as 1 - 4u q^k / (1 + q^k)^2.
double truncated_product(double u, double q, int terms) {
  double prod = 1.0;
  double qk = 1.0;
  for (int k = 1; k <= terms; ++k) {
    qk *= q;
    const double denom = (1.0 + qk) * (1.0 + qk);
    prod *= 1.0 - 4.0 * u * qk / denom;
  }
  return prod;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

GaussLegendreRule panel_rule(int points, double a, double b) {
  const int per_panel = std::min(points, kPanelNodes);
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  GaussLegendreRule base;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(per_panel);
    if (it == cache.end()) it = cache.emplace(per_panel, gauss_legendre(per_panel)).first;
    base = it->second;
  }
  return composite_rule(base, a, b, std::max(1, points / per_panel));
}

// Integral over theta in [-pi/2, pi/2] of x0 cos^2(theta) P(sin^2(theta)),
// i.e. the unnormalized weight integrated over [-x0, x0].
double unnormalized_mass(double q, int terms, int points) {
  const double x0 = 2.0 / std::sqrt(1.0 - q);
  const auto rule = panel_rule(points, -std::numbers::pi / 2, std::numbers::pi / 2);
  return integrate(rule, [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return x0 * c * c * truncated_product(s * s, q, terms);
  });
}

}  // namespace

QValue::QValue(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("q must lie in [0, 1], got " + std::to_string(q));
}

void WeightSettings::validate() const {
  if (product_truncation && *product_truncation < 1) throw DomainError("product_truncation must be >= 1");
  if (quadrature_points < 16) throw DomainError("quadrature_points must be >= 16");
  if (!(normalization_tolerance > 0.0)) throw DomainError("normalization_tolerance must be positive");
}

double q_number(int n, QValue q) {
  if (n < 0) throw DomainError("q_number: negative n");
  if (q.value() == 1.0) return n;
  double sum = 0.0, term = 1.0;
  for (int j = 0; j < n; ++j) {
    sum += term;
    term *= q.value();
  }
  return sum;
}

double q_factorial(int n, QValue q) {
  if (n < 0) throw DomainError("q_factorial: negative n");
  double prod = 1.0;
  for (int j = 1; j <= n; ++j) prod *= q_number(j, q);
  return prod;
}

double q_hermite(int n, double x, QValue q) {
  if (n < 0) throw DomainError("q_hermite: negative n");
  double prev = 0.0, cur = 1.0;
  for (int j = 0; j < n; ++j) {
    const double next = x * cur - q_number(j, q) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

bool uses_gaussian_limit(QValue q) noexcept { return q.value() > kGaussianThreshold; }

double support_bound(QValue q) noexcept {
  if (uses_gaussian_limit(q)) return std::numeric_limits<double>::infinity();
  return 2.0 / std::sqrt(1.0 - q.value());
}

int product_terms(QValue q, const WeightSettings& settings) {
  if (settings.product_truncation) return *settings.product_truncation;
  const double qv = q.value();
  if (qv <= 0.0) return 1;
  if (qv >= 1.0) return kMaxProductTerms;
  // 4 q^K / (1 + q^K)^2 < tol  <=  q^K < tol / 4
  const double k = std::ceil(std::log(kProductTolerance / 4.0) / std::log(qv));
  return static_cast<int>(std::clamp(k, 1.0, static_cast<double>(kMaxProductTerms)));
}

double weight_unnormalized(double x, QValue q, const WeightSettings& settings) {
  if (q.value() >= 1.0) throw DomainError("weight_unnormalized: q = 1 has no finite support, use the Gaussian form");
  const double x0 = 2.0 / std::sqrt(1.0 - q.value());
  const double u = (x * x) / (x0 * x0);
  if (u > 1.0 + 1e-15) throw DomainError("weight_unnormalized: |x| exceeds the support bound");
  const double u_clamped = std::min(u, 1.0);
  return std::sqrt(1.0 - u_clamped) * truncated_product(u_clamped, q.value(), product_terms(q, settings));
}

double normalization_constant(QValue q, const WeightSettings& settings) {
  settings.validate();
  if (q.value() >= 1.0) throw DomainError("normalization_constant: requires q < 1");
  const int terms = product_terms(q, settings);
  const auto key = std::make_tuple(std::llround(q.value() * 1e12), terms, settings.quadrature_points,
                                   settings.normalization_tolerance);
  static std::mutex mutex;
  static std::map<decltype(key), double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double full = unnormalized_mass(q.value(), terms, settings.quadrature_points);
  const double half = unnormalized_mass(q.value(), terms, std::max(16, settings.quadrature_points / 2));
  if (!(full > 0.0) || std::abs(full - half) > settings.normalization_tolerance * full) {
    throw NumericalError("normalization_constant: quadrature did not converge at q = " + std::to_string(q.value()) +
                         " (full " + std::to_string(full) + ", half " + std::to_string(half) + ")");
  }
  const double nq = 1.0 / full;
  std::lock_guard lock(mutex);
  cache.emplace(key, nq);
  return nq;
}

double weight_pdf(double x, QValue q, const WeightSettings& settings) {
  if (uses_gaussian_limit(q)) return normal_pdf(x);
  if (q.value() == 0.0) return std::abs(x) >= 2.0 ? 0.0 : std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
  const double x0 = support_bound(q);
  if (std::abs(x) >= x0) return 0.0;
  return normalization_constant(q, settings) * weight_unnormalized(x, q, settings);
}

std::vector<double> moment_polynomial(int n) {
  using boost::multiprecision::cpp_int;
  if (n < 0) throw DomainError("moment_polynomial: negative n");
  const int degree = n * (n + 1) / 2;
  std::vector<cpp_int> coeff(degree + 1);
  cpp_int binom = 1;  // C(2n, j), j = n + r
  for (int j = 0; j <= 2 * n; ++j) {
    const int r = j - n;
    const int power = r * (r - 1) / 2;
    coeff[power] += (r % 2 == 0) ? binom : cpp_int(-binom);
    binom = binom * (2 * n - j) / (j + 1);
  }
  // Divide by (1 - q) n times: Q = P / (1 - q) has prefix-sum coefficients.
  for (int pass = 0; pass < n; ++pass) {
    for (std::size_t i = 1; i < coeff.size(); ++i) coeff[i] += coeff[i - 1];
    if (coeff.back() != 0) throw NumericalError("moment_polynomial: inexact division by (1 - q)");
    coeff.pop_back();
  }
  std::vector<double> out;
  out.reserve(coeff.size());
  for (const auto& c : coeff) out.push_back(c.convert_to<double>());
  return out;
}

double moment_closed_form(int n, QValue q) {
  const auto coeff = moment_polynomial(n);
  double acc = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * q.value() + *it;
  return acc;
}

GaussLegendreRule weighted_rule(QValue q, const WeightSettings& settings) {
  settings.validate();
  if (uses_gaussian_limit(q)) {
    auto rule = panel_rule(settings.quadrature_points, -kGaussianCutoff, kGaussianCutoff);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) rule.weights[i] *= normal_pdf(rule.nodes[i]);
    return rule;
  }
  const double x0 = support_bound(q);
  const double nq = normalization_constant(q, settings);
  const int terms = product_terms(q, settings);
  auto rule = panel_rule(settings.quadrature_points, -std::numbers::pi / 2, std::numbers::pi / 2);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = std::sin(rule.nodes[i]);
    const double c = std::cos(rule.nodes[i]);
    rule.weights[i] *= nq * x0 * c * c * truncated_product(s * s, q.value(), terms);
    rule.nodes[i] = x0 * s;
  }
  return rule;
}

}  // namespace qee
