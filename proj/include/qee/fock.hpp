#pragma once

// Occupation-number bases and creation/annihilation strings for spinless
// fermions and bosons in N orbitals.
//
// Conventions (frozen; seeded runs depend on them):
//  * Basis order is ascending lexicographic on (n_1, ..., n_N), so for
//    fermions N = 3, m = 2 the order is 011, 101, 110.
//  * A fermion state is a^+_{i1} a^+_{i2} ... a^+_{im} |0> with i1 < i2 < ...;
//    a_j and a^+_j pick up (-1)^(number of occupied orbitals below j).
//  * A creation string over mu_1 <= ... <= mu_k is a^+_{mu_1} ... a^+_{mu_k};
//    the matching annihilation string is its adjoint a_{mu_k} ... a_{mu_1}.
//  * Strings carry no normalization; a boson k-particle configuration is
//    normalized by configuration_normalization() = 1 / sqrt(prod nu_i!).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qee/qparam.hpp"

namespace qee {

/// Occupation numbers over N orbitals (0-based internally).
class OccupationState {
 public:
  OccupationState() = default;
  explicit OccupationState(std::vector<std::uint8_t> occupations);

  std::span<const std::uint8_t> occupations() const noexcept { return occ_; }
  int orbitals() const noexcept { return static_cast<int>(occ_.size()); }
  int particles() const noexcept { return particles_; }
  int operator[](int i) const noexcept { return occ_[i]; }

  /// Occupied orbitals strictly below `orbital`.
  int occupied_below(int orbital) const noexcept;

  void add(int orbital);
  void remove(int orbital);

  friend bool operator==(const OccupationState& a, const OccupationState& b) { return a.occ_ == b.occ_; }
  friend auto operator<=>(const OccupationState& a, const OccupationState& b) { return a.occ_ <=> b.occ_; }

 private:
  std::vector<std::uint8_t> occ_;
  int particles_ = 0;
};

/// All m-particle states of N orbitals in canonical order, with O(N) ranking.
class BasisTable {
 public:
  BasisTable(int N, int m, Statistics statistics);

  int orbitals() const noexcept { return N_; }
  int particles() const noexcept { return m_; }
  Statistics statistics() const noexcept { return statistics_; }
  std::size_t size() const noexcept { return states_.size(); }

  const OccupationState& state(std::size_t rank) const { return states_.at(rank); }
  const std::vector<OccupationState>& states() const noexcept { return states_; }

  /// Rank of a valid state; nullopt if it does not belong to the table.
  std::optional<std::size_t> rank(const OccupationState& s) const;

 private:
  std::uint64_t count(int orbitals, int particles) const;

  int N_;
  int m_;
  Statistics statistics_;
  std::vector<std::vector<std::uint64_t>> counts_;  // counts_[r][p]
  std::vector<OccupationState> states_;
};

/// Number of m-particle states: C(N, m) or C(N + m - 1, m).
std::uint64_t fock_dimension(int N, int m, Statistics statistics);

BasisTable enumerate_basis(int N, int m, Statistics statistics);
BasisTable enumerate_k_configs(int N, int k, Statistics statistics);

enum class StringMode { creation, annihilation };

/// k operators on orbitals mu_1 <= ... <= mu_k (strictly increasing for fermions).
struct OperatorString {
  std::vector<int> orbitals;
  StringMode mode = StringMode::creation;

  /// String that creates (or annihilates) the k-particle configuration.
  static OperatorString from_configuration(const OccupationState& config, StringMode mode);
};

struct Transition {
  OccupationState state;
  double amplitude = 0.0;
};

/// <state'| a_{mu_k} ... a_{mu_1} |state>, or nullopt if an orbital runs empty.
std::optional<Transition> apply_annihilation(const OccupationState& state, const OperatorString& string,
                                             Statistics statistics);

/// <state'| a^+_{mu_1} ... a^+_{mu_k} |state>, or nullopt on Pauli blocking.
std::optional<Transition> apply_creation(const OccupationState& state, const OperatorString& string,
                                         Statistics statistics);

/// 1 for fermions, 1 / sqrt(prod_i nu_i!) for bosons.
double configuration_normalization(const OccupationState& config, Statistics statistics);

/// sum_i n_i eps_i.
double one_body_diagonal(const OccupationState& state, std::span<const double> eps);

/// eps_i = i + 1/i for i = 1..N.
std::vector<double> default_sp_energies(int N);

}  // namespace qee
