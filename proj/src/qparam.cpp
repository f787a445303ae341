#include "qee/qparam.hpp"

#include <algorithm>

#include "qee/binomial.hpp"
#include "qee/error.hpp"

namespace qee {

BigInt binomial(long a, long b) {
  if (b < 0 || a < 0 || a < b) return 0;
  b = std::min(b, a - b);
  BigInt result = 1;
  for (long i = 1; i <= b; ++i) result = result * (a - b + i) / i;
  return result;
}

double to_double(const BigRational& r) { return r.convert_to<double>(); }

std::string EnsembleKind::name() const {
  std::string s = statistics == Statistics::fermion ? "F" : "B";
  s += beta == Symmetry::orthogonal ? "EGOE" : "EGUE";
  return s;
}

EnsembleKind EnsembleKind::parse(std::string_view name) {
  if (name == "FEGOE") return {Statistics::fermion, Symmetry::orthogonal};
  if (name == "FEGUE") return {Statistics::fermion, Symmetry::unitary};
  if (name == "BEGOE") return {Statistics::boson, Symmetry::orthogonal};
  if (name == "BEGUE") return {Statistics::boson, Symmetry::unitary};
  throw DomainError("unknown ensemble kind '" + std::string(name) + "' (expected FEGOE, FEGUE, BEGOE or BEGUE)");
}

void SystemSpec::validate() const {
  if (N < 1) throw DomainError("N must be >= 1");
  if (k < 1) throw DomainError("k must be >= 1");
  if (k > m) throw DomainError("body rank k = " + std::to_string(k) + " exceeds particle number m = " + std::to_string(m));
  if (kind.statistics == Statistics::fermion && m > N)
    throw DomainError("fermions need m <= N (m = " + std::to_string(m) + ", N = " + std::to_string(N) + ")");
}

namespace {

void require_rank(int m, int k) {
  if (k < 1 || k > m) throw DomainError("need 1 <= k <= m");
}

void require_fermion(int N, int m, int k) {
  require_rank(m, k);
  if (m > N) throw DomainError("need m <= N for fermions");
}

QEstimate finish(const BigRational& ratio) {
  QEstimate e;
  e.raw = to_double(ratio);
  e.value = std::clamp(e.raw, 0.0, 1.0);
  e.clamped = e.raw < -1e-9 || e.raw > 1.0 + 1e-9;
  return e;
}

}  // namespace

double g_factor(int m, int k, int r) {
  if (k < 1 || m < k || r < 0) throw DomainError("g_factor: need m >= k >= 1 and r >= 0");
  return to_double(BigRational(binomial(m - static_cast<long>(r) * k, k), binomial(m, k)));
}

double q_asymptotic(int m, int k) {
  require_rank(m, k);
  return g_factor(m, k, 1);
}

FegueMoments fegue_moments(int m, int k) {
  require_rank(m, k);
  const double g1 = g_factor(m, k, 1);
  const double g2 = g_factor(m, k, 2);
  const double g3 = g_factor(m, k, 3);

  BigRational alpha_sum = 0;
  for (int a = 0; a <= k; ++a) {
    const BigInt num = binomial(k, a) * binomial(k, a) * binomial(m - 2L * k, k - a);
    if (num == 0) continue;
    const BigInt den = binomial(m, k) * binomial(m - k, a);
    if (den == 0) throw DomainError("fegue_moments: vanishing denominator in alpha sum");
    alpha_sum += BigRational(num, den);
  }
  const double s = to_double(alpha_sum);

  FegueMoments mu;
  mu.mu4 = 2.0 + g1;
  mu.mu6 = 5.0 + 6.0 * g1 + 3.0 * g1 * g1 + g2 * g1;
  mu.mu8 = 14.0 + 28.0 * g1 + 28.0 * g1 * g1 + 12.0 * g1 * g1 * g1 + 8.0 * g2 * g1 + 4.0 * g1 * g2 * g2 +
           8.0 * g1 * g1 * g2 + g1 * g2 * g3 + 2.0 * g1 * g1 * s;
  return mu;
}

QEstimate q_fegue_estimate(int N, int m, int k) {
  require_fermion(N, m, k);
  auto lambda = [&](long nu, long r) { return binomial(m - nu, r) * binomial(N - m + r - nu, r); };
  const int nu_max = std::min(k, m - k);
  BigInt sum = 0;
  for (int nu = 0; nu <= nu_max; ++nu) {
    const BigInt d = binomial(N, nu) * binomial(N, nu) - binomial(N, nu - 1) * binomial(N, nu - 1);
    sum += lambda(nu, m - k) * lambda(nu, k) * d;
  }
  const BigInt l0 = lambda(0, k);
  return finish(BigRational(sum, binomial(N, m) * l0 * l0));
}

QEstimate q_fegoe_estimate(int N, int m, int k) {
  require_fermion(N, m, k);
  const BigInt t = binomial(m, k) * (binomial(N - m + k, k) + 1);
  BigRational f = BigRational(binomial(m, k) * binomial(m, k));
  for (int s = 0; s <= k; ++s) {
    const BigInt prefactor = binomial(m - s, k - s) * binomial(m - s, k - s) * binomial(N - m + k - s, k) *
                             binomial(m - s, k) * binomial(N - m, s) * binomial(m, s);
    if (prefactor == 0) continue;
    const BigInt inv1 = binomial(N - s, k);
    const BigInt inv2 = binomial(k, s);
    if (inv1 == 0 || inv2 == 0 || N - s + 1 == 0)
      throw DomainError("q_fegoe: vanishing inverse binomial with non-zero prefactor at s = " + std::to_string(s));
    BigRational term(prefactor);
    term *= BigRational(N - 2 * s + 1, N - s + 1);
    term /= BigRational(inv1 * inv2);
    term *= BigRational(2 + binomial(N + 1, s));
    f += term;
  }
  return finish(f / BigRational(t * t));
}

QEstimate q_begue_estimate(int N, int m, int k) {
  require_rank(m, k);
  if (N < 1) throw DomainError("q_begue: need N >= 1");
  auto lambda = [&](long nu, long r) { return binomial(m - nu, r) * binomial(N + m + nu - 1, r); };
  const int nu_max = std::min(k, m - k);
  BigInt sum = 0;
  for (int nu = 0; nu <= nu_max; ++nu) {
    const BigInt a = binomial(N + nu - 1, nu);
    const BigInt b = binomial(N + nu - 2, nu - 1);
    sum += lambda(nu, m - k) * lambda(nu, k) * (a * a - b * b);
  }
  const BigInt l0 = lambda(0, k);
  return finish(BigRational(sum, binomial(N + m - 1, m) * l0 * l0));
}

QEstimate q_estimate(const SystemSpec& spec) {
  spec.validate();
  if (spec.kind.statistics == Statistics::boson) return q_begue_estimate(spec.N, spec.m, spec.k);
  if (spec.kind.beta == Symmetry::unitary) return q_fegue_estimate(spec.N, spec.m, spec.k);
  return q_fegoe_estimate(spec.N, spec.m, spec.k);
}

double q_fegue(int N, int m, int k) { return q_fegue_estimate(N, m, k).value; }
double q_fegoe(int N, int m, int k) { return q_fegoe_estimate(N, m, k).value; }
double q_begue(int N, int m, int k) { return q_begue_estimate(N, m, k).value; }
double q_for(const SystemSpec& spec) { return q_estimate(spec).value; }

}  // namespace qee
