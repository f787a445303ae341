#pragma once

#include <Eigen/Dense>

#include "qee/ensemble.hpp"

namespace qee {

/// Eigen-decomposition of one ensemble member.
struct SpectralResult {
  /// Ascending eigenvalues E.
  Eigen::VectorXd energies;
  /// |C_b^E|^2 with rows = basis states b, columns = eigenstates; empty when
  /// only eigenvalues were requested.
  Eigen::MatrixXd strengths;
  /// Diagonal elements <b|H|b>.
  Eigen::VectorXd basis_energies;
  double centroid = 0.0;
  /// Population standard deviation of the eigenvalues.
  double width = 0.0;

  bool has_strengths() const noexcept { return strengths.size() > 0; }
};

enum class Eigenvectors { compute, skip };

/// Dense Hermitian eigensolve. With eigenvectors the residual
/// ||H v - E v|| < 1e-9 ||H|| is verified for every pair.
template <class Scalar>
SpectralResult diagonalize(const Matrix<Scalar>& H, Eigenvectors vectors = Eigenvectors::compute);

SpectralResult diagonalize(const AnyMatrix& H, Eigenvectors vectors = Eigenvectors::compute);

/// max_ij |H_ij - conj(H_ji)|.
template <class Scalar>
double hermiticity_defect(const Matrix<Scalar>& H);

/// Shift by the centroid and scale by the width (energies and basis energies).
SpectralResult standardize(const SpectralResult& result);

/// True when compiled against the LAPACKE backend.
bool lapacke_backend() noexcept;

}  // namespace qee
