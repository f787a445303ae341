#pragma once

// Closed-form interpolation parameter q for embedded ensembles of k-body
// interactions. All binomial arithmetic is exact; conversion to double
// happens once, at the final ratio.

#include <string>
#include <string_view>

namespace qee {

enum class Statistics { fermion, boson };
enum class Symmetry { orthogonal = 1, unitary = 2 };

struct EnsembleKind {
  Statistics statistics = Statistics::fermion;
  Symmetry beta = Symmetry::orthogonal;

  /// "FEGOE", "FEGUE", "BEGOE" or "BEGUE".
  std::string name() const;
  static EnsembleKind parse(std::string_view name);
  friend bool operator==(const EnsembleKind&, const EnsembleKind&) = default;
};

/// N single-particle states, m particles, body rank k.
struct SystemSpec {
  int N = 0;
  int m = 0;
  int k = 0;
  EnsembleKind kind;

  /// Throws DomainError unless 1 <= k <= m and (fermions) m <= N.
  void validate() const;
};

/// C(m - r k, k) / C(m, k).
double g_factor(int m, int k, int r);

/// Large-N limit q ~ G(m, k, 1).
double q_asymptotic(int m, int k);

struct FegueMoments {
  double mu4 = 0.0;
  double mu6 = 0.0;
  double mu8 = 0.0;
};

/// Reduced moments to order 8 of FEGUE(k) in the N -> infinity limit.
FegueMoments fegue_moments(int m, int k);

/// A q value together with the unclamped ratio it came from.
struct QEstimate {
  double value = 0.0;
  double raw = 0.0;
  bool clamped = false;  ///< raw was outside [0, 1] by more than 1e-9
};

QEstimate q_fegue_estimate(int N, int m, int k);
QEstimate q_fegoe_estimate(int N, int m, int k);
QEstimate q_begue_estimate(int N, int m, int k);
QEstimate q_estimate(const SystemSpec& spec);

/// Finite-N fermion formula with Lambda^nu and d(g_nu) = C(N,nu)^2 - C(N,nu-1)^2.
double q_fegue(int N, int m, int k);
/// Finite-N fermion formula F / T^2 of the orthogonal ensemble, as displayed.
double q_fegoe(int N, int m, int k);
/// Boson formula (N -> -N law); also used for BEGOE.
double q_begue(int N, int m, int k);
/// Dispatch: FEGUE -> q_fegue, FEGOE -> q_fegoe, BEGUE/BEGOE -> q_begue.
double q_for(const SystemSpec& spec);

}  // namespace qee
