#include "qee/ensemble.hpp"

#include <cmath>
#include <string>

#include "qee/error.hpp"

namespace qee {

std::uint64_t member_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <>
Matrix<double> sample_gaussian_ensemble<double>(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix<double> v(dim, dim);
  const double diag_scale = std::sqrt(2.0);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      v(i, j) = normal(rng);
      v(j, i) = v(i, j);
    }
    v(j, j) = diag_scale * normal(rng);
  }
  return v;
}

template <>
Matrix<Complex> sample_gaussian_ensemble<Complex>(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix<Complex> v(dim, dim);
  const double half = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(i, j) = Complex(half * re, half * im);
      v(j, i) = std::conj(v(i, j));
    }
    v(j, j) = Complex(normal(rng), 0.0);
  }
  return v;
}

AnyMatrix sample_kbody(const SystemSpec& spec, std::uint64_t seed) {
  spec.validate();
  const auto dim = static_cast<Eigen::Index>(fock_dimension(spec.N, spec.k, spec.kind.statistics));
  Rng rng(seed);
  if (spec.kind.beta == Symmetry::orthogonal) return sample_gaussian_ensemble<double>(dim, rng);
  return sample_gaussian_ensemble<Complex>(dim, rng);
}

template <class Scalar>
Matrix<Scalar> embed(const Matrix<Scalar>& kmat, const BasisTable& basis, const BasisTable& kconfigs) {
  const Statistics stats = basis.statistics();
  if (kconfigs.statistics() != stats || kconfigs.orbitals() != basis.orbitals())
    throw DomainError("embed: basis and k-configurations disagree on N or statistics");
  const int k = kconfigs.particles();
  const int m = basis.particles();
  if (k < 1 || k > m) throw DomainError("embed: need 1 <= k <= m");
  const auto kdim = static_cast<Eigen::Index>(kconfigs.size());
  if (kmat.rows() != kdim || kmat.cols() != kdim)
    throw DomainError("embed: k-body matrix is " + std::to_string(kmat.rows()) + "x" + std::to_string(kmat.cols()) +
                      ", expected " + std::to_string(kdim));
  if (basis.size() > kMaxDenseDimension)
    throw DomainError("embed: dimension " + std::to_string(basis.size()) + " exceeds dense limit " +
                      std::to_string(kMaxDenseDimension));

  std::vector<OperatorString> strings;
  std::vector<double> norms;
  strings.reserve(kconfigs.size());
  norms.reserve(kconfigs.size());
  for (const auto& config : kconfigs.states()) {
    strings.push_back(OperatorString::from_configuration(config, StringMode::creation));
    norms.push_back(configuration_normalization(config, stats));
  }

  // Insert the (m-k)-particle intermediates: <b'|psi^+(a) psi(g)|b> =
  // sum_c <b'|psi^+(a)|c> <b|psi^+(g)|c>, all amplitudes real.
  struct Link {
    Eigen::Index row;
    Eigen::Index config;
    double amplitude;
  };
  const BasisTable intermediates(basis.orbitals(), m - k, stats);
  const auto d = static_cast<Eigen::Index>(basis.size());
  Matrix<Scalar> h = Matrix<Scalar>::Zero(d, d);
  std::vector<Link> links;
  for (const auto& c : intermediates.states()) {
    links.clear();
    for (std::size_t a = 0; a < strings.size(); ++a) {
      const auto t = apply_creation(c, strings[a], stats);
      if (!t) continue;
      const auto row = basis.rank(t->state);
      if (!row) throw NumericalError("embed: created state missing from basis");
      links.push_back({static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(a), t->amplitude * norms[a]});
    }
    for (const auto& out : links)
      for (const auto& in : links) h(out.row, in.row) += kmat(out.config, in.config) * (out.amplitude * in.amplitude);
  }
  return h;
}

template <class Scalar>
Matrix<Scalar> compose_hamiltonian(const BasisTable& basis, std::span<const double> eps, const Matrix<Scalar>& V,
                                   double lambda) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  if (V.rows() != d || V.cols() != d) throw DomainError("compose_hamiltonian: dimension mismatch");
  Matrix<Scalar> h = lambda * V;
  for (Eigen::Index b = 0; b < d; ++b) h(b, b) += one_body_diagonal(basis.state(b), eps);
  return h;
}

template Matrix<double> embed(const Matrix<double>&, const BasisTable&, const BasisTable&);
template Matrix<Complex> embed(const Matrix<Complex>&, const BasisTable&, const BasisTable&);
template Matrix<double> compose_hamiltonian(const BasisTable&, std::span<const double>, const Matrix<double>&, double);
template Matrix<Complex> compose_hamiltonian(const BasisTable&, std::span<const double>, const Matrix<Complex>&,
                                             double);

void EnsembleRunSpec::validate() const {
  system.validate();
  if (members < 1) throw DomainError("member count must be >= 1");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  if (!sp_energies.empty() && static_cast<int>(sp_energies.size()) != system.N)
    throw DomainError("sp_energies must have N entries");
}

namespace {

EnsembleRunSpec validated(EnsembleRunSpec run) {
  run.validate();
  const auto d = fock_dimension(run.system.N, run.system.m, run.system.kind.statistics);
  if (d > kMaxDenseDimension)
    throw DomainError("Fock dimension " + std::to_string(d) + " exceeds the dense limit " +
                      std::to_string(kMaxDenseDimension));
  return run;
}

}  // namespace

MemberGenerator::MemberGenerator(EnsembleRunSpec run)
    : run_(validated(std::move(run))),
      basis_(run_.system.N, run_.system.m, run_.system.kind.statistics),
      kconfigs_(run_.system.N, run_.system.k, run_.system.kind.statistics),
      eps_(run_.sp_energies.empty() ? default_sp_energies(run_.system.N) : run_.sp_energies) {}

AnyMatrix MemberGenerator::generate(std::size_t index) const {
  if (index >= run_.members) throw DomainError("member index out of range");
  const AnyMatrix kmat = sample_kbody(run_.system, member_seed(run_.base_seed, index));
  return std::visit(
      [&](const auto& v) -> AnyMatrix {
        auto V = embed(v, basis_, kconfigs_);
        if (run_.mode == HamiltonianMode::interaction_only) return V;
        return compose_hamiltonian(basis_, eps_, V, run_.lambda);
      },
      kmat);
}

AnyMatrix generate_member(const EnsembleRunSpec& run, std::size_t index) { return MemberGenerator(run).generate(index); }

}  // namespace qee
