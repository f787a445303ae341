#pragma once

// Brute-force second quantization on the full Fock space: every a^+_i is an
// explicit sparse matrix, and operator strings are literal matrix products.

#include <Eigen/Sparse>
#include <cmath>
#include <map>
#include <vector>

#include "qee/ensemble.hpp"

namespace oracle {

using Sparse = Eigen::SparseMatrix<double>;

struct FockSpace {
  int N;
  int cap;  // max occupation per mode
  bool fermion;
  std::vector<std::vector<int>> states;
  std::map<std::vector<int>, int> index;
  std::vector<Sparse> create;  // a^+_i

  FockSpace(int N_, int m, qee::Statistics stats) : N(N_), fermion(stats == qee::Statistics::fermion) {
    cap = fermion ? 1 : m;
    std::vector<int> occ(N, 0);
    for (;;) {
      index[occ] = static_cast<int>(states.size());
      states.push_back(occ);
      int i = N - 1;
      while (i >= 0 && occ[i] == cap) occ[i--] = 0;
      if (i < 0) break;
      ++occ[i];
    }
    for (int mode = 0; mode < N; ++mode) {
      std::vector<Eigen::Triplet<double>> t;
      for (std::size_t s = 0; s < states.size(); ++s) {
        auto occ2 = states[s];
        if (occ2[mode] == cap) continue;
        double amp = std::sqrt(occ2[mode] + 1.0);
        if (fermion) {
          // Jordan-Wigner string over the modes below.
          int below = 0;
          for (int j = 0; j < mode; ++j) below += occ2[j];
          amp = below % 2 ? -1.0 : 1.0;
        }
        ++occ2[mode];
        t.emplace_back(index.at(occ2), static_cast<int>(s), amp);
      }
      Sparse op(dim(), dim());
      op.setFromTriplets(t.begin(), t.end());
      create.push_back(op);
    }
  }

  int dim() const { return static_cast<int>(states.size()); }

  Sparse identity() const {
    Sparse id(dim(), dim());
    id.setIdentity();
    return id;
  }

  // a^+_{o1} a^+_{o2} ... in the given (not necessarily sorted) order.
  Sparse creation_string(const std::vector<int>& orbitals) const {
    Sparse op = identity();
    for (int o : orbitals) op = Sparse(op * create[o]);
    return op;
  }
};

inline std::vector<int> orbitals_of(const qee::OccupationState& s) {
  std::vector<int> out;
  for (int i = 0; i < s.orbitals(); ++i)
    for (int n = 0; n < s[i]; ++n) out.push_back(i);
  return out;
}

inline double norm_factor(const qee::OccupationState& s) {
  double f = 1.0;
  for (int i = 0; i < s.orbitals(); ++i) f *= std::tgamma(s[i] + 1.0);
  return 1.0 / std::sqrt(f);
}

// sum_{alpha,gamma} v N_alpha N_gamma A^+(alpha) A(gamma), with A = (A^+)^dagger,
// projected on the m-particle states listed in `basis` (in that order).
// `relabel` maps orbital i -> relabel[i] inside the strings.
template <class Scalar>
qee::Matrix<Scalar> embedded_by_products(const qee::Matrix<Scalar>& v, const qee::BasisTable& basis,
                                         const qee::BasisTable& kconfigs, const std::vector<int>& relabel = {}) {
  const FockSpace fs(basis.orbitals(), basis.particles(), basis.statistics());
  std::vector<Sparse> up;
  std::vector<double> norm;
  for (const auto& c : kconfigs.states()) {
    auto orb = orbitals_of(c);
    if (!relabel.empty())
      for (int& o : orb) o = relabel[o];
    up.push_back(fs.creation_string(orb));
    norm.push_back(basis.statistics() == qee::Statistics::boson ? norm_factor(c) : 1.0);
  }
  std::vector<int> position(fs.dim(), -1);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto occ = basis.state(r).occupations();
    position[fs.index.at(std::vector<int>(occ.begin(), occ.end()))] = static_cast<int>(r);
  }
  const auto d = static_cast<Eigen::Index>(basis.size());
  qee::Matrix<Scalar> out = qee::Matrix<Scalar>::Zero(d, d);
  for (std::size_t a = 0; a < up.size(); ++a) {
    for (std::size_t g = 0; g < up.size(); ++g) {
      const Sparse op = up[a] * Sparse(up[g].transpose());
      const Scalar c = v(a, g) * norm[a] * norm[g];
      for (int col = 0; col < op.outerSize(); ++col) {
        if (position[col] < 0) continue;
        for (Sparse::InnerIterator it(op, col); it; ++it)
          if (position[it.row()] >= 0) out(position[it.row()], position[col]) += c * it.value();
      }
    }
  }
  return out;
}

}  // namespace oracle
