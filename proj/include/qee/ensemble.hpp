#pragma once

// Embedded Gaussian ensembles: a k-particle GOE/GUE propagated into the
// m-particle Fock space, optionally on top of a one-body mean field.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "qee/fock.hpp"
#include "qee/qparam.hpp"

namespace qee {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;

/// Real symmetric (GOE) or complex Hermitian (GUE) matrix.
using AnyMatrix = std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>;

/// Largest Fock dimension stored densely.
inline constexpr std::size_t kMaxDenseDimension = 4096;

using Rng = std::mt19937_64;

/// SplitMix64 finalizer applied to base + (index + 1) * golden gamma.
std::uint64_t member_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

/// Zero-mean Gaussian ensemble with v = 1.
/// double: off-diagonal variance 1, diagonal variance 2.
/// Complex: off-diagonal (x + iy)/sqrt(2), real diagonal of variance 1.
/// Fills the upper triangle column by column, then mirrors.
template <class Scalar>
Matrix<Scalar> sample_gaussian_ensemble(Eigen::Index dim, Rng& rng);
template <>
Matrix<double> sample_gaussian_ensemble<double>(Eigen::Index dim, Rng& rng);
template <>
Matrix<Complex> sample_gaussian_ensemble<Complex>(Eigen::Index dim, Rng& rng);

/// k-body interaction matrix over the k-particle configurations of spec.
AnyMatrix sample_kbody(const SystemSpec& spec, std::uint64_t seed);

/// <b'|V|b> = sum_{alpha,gamma} v_{alpha gamma} <b'|psi^+(alpha) psi(gamma)|b>,
/// with boson configurations normalized. Rows/columns of kmat follow kconfigs.
template <class Scalar>
Matrix<Scalar> embed(const Matrix<Scalar>& kmat, const BasisTable& basis, const BasisTable& kconfigs);

/// h(1) + lambda V with h(1) diagonal, <b|h|b> = sum_i n_i eps_i.
template <class Scalar>
Matrix<Scalar> compose_hamiltonian(const BasisTable& basis, std::span<const double> eps, const Matrix<Scalar>& V,
                                   double lambda);

enum class HamiltonianMode {
  interaction_only,  ///< H = V(k)
  quench,            ///< H = h(1) + lambda V(k)
};

struct EnsembleRunSpec {
  SystemSpec system;
  std::size_t members = 1;
  double lambda = 0.5;
  std::uint64_t base_seed = 0;
  HamiltonianMode mode = HamiltonianMode::quench;
  /// Single-particle energies; empty selects eps_i = i + 1/i.
  std::vector<double> sp_energies;

  void validate() const;
};

/// Shares the basis tables between members of one run.
class MemberGenerator {
 public:
  explicit MemberGenerator(EnsembleRunSpec run);

  const EnsembleRunSpec& run() const noexcept { return run_; }
  const BasisTable& basis() const noexcept { return basis_; }
  const BasisTable& kconfigs() const noexcept { return kconfigs_; }
  std::span<const double> sp_energies() const noexcept { return eps_; }

  /// Deterministic in (base seed, index); independent streams per index.
  AnyMatrix generate(std::size_t index) const;

 private:
  EnsembleRunSpec run_;
  BasisTable basis_;
  BasisTable kconfigs_;
  std::vector<double> eps_;
};

AnyMatrix generate_member(const EnsembleRunSpec& run, std::size_t index);

}  // namespace qee
