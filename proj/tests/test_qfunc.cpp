#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qee/error.hpp"
#include "qee/observables.hpp"
#include "qee/qfunc.hpp"

using namespace qee;

namespace {

double mu4_poly(double q) { return 2 + q; }
double mu6_poly(double q) { return 5 + 6 * q + 3 * q * q + q * q * q; }
double mu8_poly(double q) {
  return 14 + 28 * q + 28 * q * q + 20 * std::pow(q, 3) + 10 * std::pow(q, 4) + 4 * std::pow(q, 5) + std::pow(q, 6);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("q-numbers and q-factorials") {
  CHECK(q_number(0, QValue(0.5)) == 0.0);
  CHECK(q_number(3, QValue(0.5)) == doctest::Approx(1.75));
  CHECK(q_number(4, QValue(1.0)) == 4.0);
  CHECK(q_number(4, QValue(0.0)) == 1.0);
  CHECK(q_factorial(0, QValue(0.3)) == 1.0);
  CHECK(q_factorial(3, QValue(0.5)) == doctest::Approx(1.0 * 1.5 * 1.75));
  CHECK(q_factorial(5, QValue(1.0)) == 120.0);
  CHECK(q_factorial(5, QValue(0.0)) == 1.0);
}

TEST_CASE("q-Hermite recursion") {
  const QValue q(0.4);
  const double x = 0.7;
  CHECK(q_hermite(0, x, q) == 1.0);
  CHECK(q_hermite(1, x, q) == x);
  CHECK(q_hermite(2, x, q) == doctest::Approx(x * x - 1));
  CHECK(q_hermite(3, x, q) == doctest::Approx(x * x * x - (2 + 0.4) * x));
  // q = 1 gives probabilists' Hermite He_4 = x^4 - 6x^2 + 3.
  CHECK(q_hermite(4, x, QValue(1.0)) == doctest::Approx(std::pow(x, 4) - 6 * x * x + 3));
  // q = 0 gives Chebyshev U_n(x/2).
  CHECK(q_hermite(5, x, QValue(0.0)) == doctest::Approx(std::sin(6 * std::acos(x / 2)) / std::sin(std::acos(x / 2))));
}

TEST_CASE("QValue rejects values outside [0, 1]") {
  CHECK_THROWS_AS(QValue(-0.01), DomainError);
  CHECK_THROWS_AS(QValue(1.01), DomainError);
  CHECK_THROWS_AS(QValue(std::nan("")), DomainError);
}

TEST_CASE("support and weight domain") {
  CHECK(support_bound(QValue(0.0)) == doctest::Approx(2.0));
  CHECK(support_bound(QValue(0.75)) == doctest::Approx(4.0));
  CHECK(std::isinf(support_bound(QValue(1.0))));
  CHECK_THROWS_AS(weight_unnormalized(0.0, QValue(1.0)), DomainError);
  CHECK_THROWS_AS(weight_unnormalized(2.5, QValue(0.0)), DomainError);
  CHECK(weight_pdf(2.5, QValue(0.0)) == 0.0);
}

TEST_CASE("normalization constant") {
  CHECK(normalization_constant(QValue(0.0)) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
  for (double q : {0.1, 0.5, 0.9, 0.99}) {
    CAPTURE(q);
    const double total = integrate_weighted(QValue(q), [](double) { return 1.0; });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("weight limits") {
  const double x = 0.8;
  CHECK(weight_pdf(x, QValue(1.0)) == doctest::Approx(std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi)));
  CHECK(weight_pdf(x, QValue(0.0)) == doctest::Approx(std::sqrt(4 - x * x) / (2 * std::numbers::pi)));
  CHECK(weight_pdf(x, QValue(0.9995)) == weight_pdf(x, QValue(1.0)));
  // Continuity as q approaches the Gaussian switch.
  CHECK(std::abs(weight_pdf(x, QValue(0.998)) - weight_pdf(x, QValue(1.0))) < 5e-4);
  CHECK(weight_pdf(0.3, QValue(0.4)) == doctest::Approx(weight_pdf(-0.3, QValue(0.4))));
}

TEST_CASE("closed-form moments") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double q = U(rng);
    CHECK(rel(moment_closed_form(2, QValue(q)), mu4_poly(q)) < 1e-12);
    CHECK(rel(moment_closed_form(3, QValue(q)), mu6_poly(q)) < 1e-12);
    CHECK(rel(moment_closed_form(4, QValue(q)), mu8_poly(q)) < 1e-12);
  }
  CHECK(moment_closed_form(0, QValue(0.3)) == 1.0);
  CHECK(moment_closed_form(1, QValue(0.3)) == doctest::Approx(1.0));
  // Catalan numbers at q = 0, double factorials at q = 1.
  const double catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  double dfact = 1;
  for (int n = 1; n < 8; ++n) {
    dfact *= 2 * n - 1;
    CHECK(moment_closed_form(n, QValue(0.0)) == doctest::Approx(catalan[n]));
    CHECK(moment_closed_form(n, QValue(1.0)) == doctest::Approx(dfact));
  }
  // Near q = 1 the division by (1 - q)^n must not lose accuracy.
  CHECK(rel(moment_closed_form(4, QValue(1 - 1e-9)), mu8_poly(1 - 1e-9)) < 1e-12);
}

TEST_CASE("moments by quadrature") {
  for (double q : {0.0, 0.3, 0.7, 0.95}) {
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      const double m = integrate_weighted(QValue(q), [n](double x) { return std::pow(x, 2 * n); });
      CHECK(rel(m, moment_closed_form(n, QValue(q))) < 1e-6);
    }
    const double odd = integrate_weighted(QValue(q), [](double x) { return x * x * x; });
    CHECK(std::abs(odd) < 1e-12);
  }
}

TEST_CASE("orthogonality") {
  for (double q : {0.2, 0.5, 0.8}) {
    for (int n = 0; n <= 6; ++n)
      for (int m = 0; m <= 6; ++m) {
        const double I = integrate_weighted(QValue(q), [&](double x) {
          return q_hermite(n, x, QValue(q)) * q_hermite(m, x, QValue(q));
        });
        if (n == m)
          CHECK(rel(I, q_factorial(n, QValue(q))) < 1e-6);
        else
          CHECK(std::abs(I) < 1e-6 * std::sqrt(q_factorial(n, QValue(q)) * q_factorial(m, QValue(q))));
      }
  }
}

TEST_CASE("theory density second moment is sigma^2") {
  for (double q : {0.0, 0.3, 0.7}) {
    // E = ec + sigma x0 sin(theta); the integrand is smooth and periodic in
    // theta, so the trapezoid rule converges geometrically.
    const double sigma = 1.7, ec = -0.4, x0 = support_bound(QValue(q));
    const int n = 4000;
    std::vector<double> grid, jac;
    for (int i = 0; i < n; ++i) {
      const double th = -std::numbers::pi / 2 + std::numbers::pi * (i + 0.5) / n;
      grid.push_back(ec + sigma * x0 * std::sin(th));
      jac.push_back(sigma * x0 * std::cos(th) * std::numbers::pi / n);
    }
    const auto rho = theory_density(grid, QValue(q), ec, sigma);
    double m0 = 0, m2 = 0;
    for (int i = 0; i < n; ++i) {
      m0 += jac[i] * rho.y[i];
      m2 += jac[i] * rho.y[i] * (grid[i] - ec) * (grid[i] - ec);
    }
    CHECK(rel(m0, 1.0) < 1e-6);
    CHECK(rel(m2, sigma * sigma) < 1e-6);
  }
}

TEST_CASE("survival theory analytic limits") {
  const auto t1 = uniform_grid(0.0, 3.0, 300);
  const auto g = survival_theory(QValue(1.0), t1);
  for (std::size_t i = 0; i < t1.size(); ++i) CHECK(std::abs(g.y[i] - std::exp(-t1[i] * t1[i])) < 1e-4);

  const auto t0 = uniform_grid(0.0, 10.0, 500);
  const auto s = survival_theory(QValue(0.0), t0);
  for (std::size_t i = 1; i < t0.size(); ++i) {
    const double j = std::cyl_bessel_j(1.0, 2 * t0[i]) / t0[i];
    CHECK(std::abs(s.y[i] - j * j) < 1e-4);
  }
  CHECK(s.y[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("survival theory stays in [0, 1]") {
  const auto t = uniform_grid(0.0, 5.0, 100);
  for (double q : {0.0, 0.2, 0.6, 0.95, 1.0}) {
    const auto f = survival_theory(QValue(q), t);
    for (double y : f.y) {
      CHECK(y >= 0.0);
      CHECK(y <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("weight settings validation") {
  WeightSettings bad;
  bad.quadrature_points = 8;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  WeightSettings trunc;
  trunc.product_truncation = 0;
  CHECK_THROWS_AS(trunc.validate(), DomainError);
}
