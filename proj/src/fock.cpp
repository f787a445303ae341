#include "qee/fock.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qee/binomial.hpp"
#include "qee/error.hpp"

namespace qee {

OccupationState::OccupationState(std::vector<std::uint8_t> occupations) : occ_(std::move(occupations)) {
  particles_ = std::accumulate(occ_.begin(), occ_.end(), 0);
}

int OccupationState::occupied_below(int orbital) const noexcept {
  int n = 0;
  for (int i = 0; i < orbital; ++i) n += occ_[i];
  return n;
}

void OccupationState::add(int orbital) {
  ++occ_.at(orbital);
  ++particles_;
}

void OccupationState::remove(int orbital) {
  if (occ_.at(orbital) == 0) throw DomainError("remove: orbital " + std::to_string(orbital) + " is empty");
  --occ_[orbital];
  --particles_;
}

std::uint64_t fock_dimension(int N, int m, Statistics statistics) {
  if (N < 0 || m < 0) throw DomainError("fock_dimension: negative argument");
  const BigInt d = statistics == Statistics::fermion ? binomial(N, m) : (N == 0 ? BigInt(m == 0) : binomial(N + m - 1, m));
  if (d > std::numeric_limits<std::uint64_t>::max()) throw DomainError("fock_dimension: overflow");
  return d.convert_to<std::uint64_t>();
}

namespace {

void fill_states(int orbital, int remaining, int cap, std::vector<std::uint8_t>& occ,
                 std::vector<OccupationState>& out) {
  const int N = static_cast<int>(occ.size());
  if (orbital == N) {
    if (remaining == 0) out.emplace_back(occ);
    return;
  }
  for (int v = 0; v <= std::min(cap, remaining); ++v) {
    occ[orbital] = static_cast<std::uint8_t>(v);
    fill_states(orbital + 1, remaining - v, cap, occ, out);
  }
  occ[orbital] = 0;
}

constexpr std::uint64_t kMaxBasis = 50'000'000;

}  // namespace

BasisTable::BasisTable(int N, int m, Statistics statistics) : N_(N), m_(m), statistics_(statistics) {
  if (N < 1) throw DomainError("basis: need N >= 1");
  if (m < 0) throw DomainError("basis: need m >= 0");
  if (statistics == Statistics::fermion && m > N)
    throw DomainError("basis: fermions need m <= N (m = " + std::to_string(m) + ", N = " + std::to_string(N) + ")");
  if (statistics == Statistics::boson && m > 255) throw DomainError("basis: boson occupations limited to 255");
  const std::uint64_t dim = fock_dimension(N, m, statistics);
  if (dim > kMaxBasis) throw DomainError("basis: dimension " + std::to_string(dim) + " too large");

  counts_.assign(N + 1, std::vector<std::uint64_t>(m + 1, 0));
  for (int r = 0; r <= N; ++r)
    for (int p = 0; p <= m; ++p) counts_[r][p] = (r == 0) ? (p == 0) : fock_dimension(r, p, statistics);

  states_.reserve(dim);
  std::vector<std::uint8_t> occ(N, 0);
  fill_states(0, m, statistics == Statistics::fermion ? 1 : m, occ, states_);
}

std::uint64_t BasisTable::count(int orbitals, int particles) const {
  if (particles < 0) return 0;
  return counts_[orbitals][particles];
}

std::optional<std::size_t> BasisTable::rank(const OccupationState& s) const {
  if (s.orbitals() != N_ || s.particles() != m_) return std::nullopt;
  const int cap = statistics_ == Statistics::fermion ? 1 : m_;
  std::uint64_t r = 0;
  int remaining = m_;
  for (int i = 0; i < N_; ++i) {
    const int n = s[i];
    if (n > cap) return std::nullopt;
    for (int v = 0; v < n; ++v) r += count(N_ - i - 1, remaining - v);
    remaining -= n;
  }
  return static_cast<std::size_t>(r);
}

BasisTable enumerate_basis(int N, int m, Statistics statistics) { return BasisTable(N, m, statistics); }

BasisTable enumerate_k_configs(int N, int k, Statistics statistics) {
  if (k < 1) throw DomainError("enumerate_k_configs: need k >= 1");
  return BasisTable(N, k, statistics);
}

OperatorString OperatorString::from_configuration(const OccupationState& config, StringMode mode) {
  OperatorString s;
  s.mode = mode;
  for (int i = 0; i < config.orbitals(); ++i)
    for (int v = 0; v < config[i]; ++v) s.orbitals.push_back(i);
  return s;
}

namespace {

void check_string(const OperatorString& string, StringMode expected, int orbitals, Statistics statistics) {
  if (string.mode != expected) throw DomainError("operator string has the wrong mode");
  for (std::size_t i = 0; i < string.orbitals.size(); ++i) {
    const int o = string.orbitals[i];
    if (o < 0 || o >= orbitals) throw DomainError("operator string orbital out of range");
    if (i > 0) {
      const int prev = string.orbitals[i - 1];
      if (o < prev || (statistics == Statistics::fermion && o == prev))
        throw DomainError("operator string orbitals must be non-decreasing (strictly increasing for fermions)");
    }
  }
}

}  // namespace

std::optional<Transition> apply_annihilation(const OccupationState& state, const OperatorString& string,
                                             Statistics statistics) {
  check_string(string, StringMode::annihilation, state.orbitals(), statistics);
  Transition t{state, 1.0};
  // a_{mu_k} ... a_{mu_1}: a_{mu_1} acts first.
  for (const int o : string.orbitals) {
    const int n = t.state[o];
    if (n == 0) return std::nullopt;
    if (statistics == Statistics::fermion) {
      if (t.state.occupied_below(o) % 2) t.amplitude = -t.amplitude;
    } else {
      t.amplitude *= std::sqrt(static_cast<double>(n));
    }
    t.state.remove(o);
  }
  return t;
}

std::optional<Transition> apply_creation(const OccupationState& state, const OperatorString& string,
                                         Statistics statistics) {
  check_string(string, StringMode::creation, state.orbitals(), statistics);
  Transition t{state, 1.0};
  // a^+_{mu_1} ... a^+_{mu_k}: a^+_{mu_k} acts first.
  for (auto it = string.orbitals.rbegin(); it != string.orbitals.rend(); ++it) {
    const int o = *it;
    const int n = t.state[o];
    if (statistics == Statistics::fermion) {
      if (n != 0) return std::nullopt;
      if (t.state.occupied_below(o) % 2) t.amplitude = -t.amplitude;
    } else {
      t.amplitude *= std::sqrt(static_cast<double>(n + 1));
    }
    t.state.add(o);
  }
  return t;
}

double configuration_normalization(const OccupationState& config, Statistics statistics) {
  if (statistics == Statistics::fermion) return 1.0;
  double fact = 1.0;
  for (const auto n : config.occupations())
    for (int j = 2; j <= n; ++j) fact *= j;
  return 1.0 / std::sqrt(fact);
}

double one_body_diagonal(const OccupationState& state, std::span<const double> eps) {
  if (static_cast<int>(eps.size()) != state.orbitals()) throw DomainError("one_body_diagonal: eps length differs from N");
  double e = 0.0;
  for (int i = 0; i < state.orbitals(); ++i) e += state[i] * eps[i];
  return e;
}

std::vector<double> default_sp_energies(int N) {
  std::vector<double> eps(N);
  for (int i = 1; i <= N; ++i) eps[i - 1] = i + 1.0 / i;
  return eps;
}

}  // namespace qee
