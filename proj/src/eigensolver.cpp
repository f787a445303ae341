#include "qee/eigensolver.hpp"

#include <cmath>
#include <string>

#include "qee/error.hpp"

#ifdef QEE_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace qee {

template <class Scalar>
double hermiticity_defect(const Matrix<Scalar>& H) {
  if (H.rows() != H.cols()) return std::numeric_limits<double>::infinity();
  return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

template double hermiticity_defect(const Matrix<double>&);
template double hermiticity_defect(const Matrix<Complex>&);

bool lapacke_backend() noexcept {
#ifdef QEE_HAVE_LAPACKE
  return true;
#else
  return false;
#endif
}

namespace {

#ifdef QEE_HAVE_LAPACKE
// Divide-and-conquer drivers; Eigen's QR iteration is several times slower
// once eigenvectors are needed.
bool lapacke_solve(Matrix<double>& a, Eigen::VectorXd& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  return LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data()) == 0;
}

bool lapacke_solve(Matrix<Complex>& a, Eigen::VectorXd& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  return LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
                        w.data()) == 0;
}
#endif

template <class Scalar>
void eigen_solve(const Matrix<Scalar>& H, Eigenvectors vectors, Eigen::VectorXd& energies, Matrix<Scalar>& basis) {
  if (vectors == Eigenvectors::compute) {
#ifdef QEE_HAVE_LAPACKE
    basis = H;
    energies.resize(H.rows());
    if (!lapacke_solve(basis, energies)) throw NumericalError("diagonalize: LAPACKE eigensolver failed");
    return;
#endif
  }
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(
      H, vectors == Eigenvectors::compute ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("diagonalize: eigensolver did not converge");
  energies = solver.eigenvalues();
  if (vectors == Eigenvectors::compute) basis = solver.eigenvectors();
}

}  // namespace

template <class Scalar>
SpectralResult diagonalize(const Matrix<Scalar>& H, Eigenvectors vectors) {
  if (H.rows() == 0 || H.rows() != H.cols()) throw DomainError("diagonalize: need a non-empty square matrix");
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if (hermiticity_defect(H) > 1e-12 * scale) throw DomainError("diagonalize: matrix is not Hermitian");

  SpectralResult r;
  Matrix<Scalar> basis;
  eigen_solve(H, vectors, r.energies, basis);
  r.basis_energies = H.diagonal().real();
  r.centroid = r.energies.mean();
  r.width = std::sqrt((r.energies.array() - r.centroid).square().mean());

  if (vectors == Eigenvectors::compute) {
    const double norm = std::max(r.energies.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    const Matrix<Scalar> residual = H * basis - basis * r.energies.asDiagonal();
    const double worst = residual.colwise().norm().maxCoeff();
    if (worst > 1e-9 * norm)
      throw NumericalError("diagonalize: eigenpair residual " + std::to_string(worst) + " exceeds tolerance");
    r.strengths = basis.cwiseAbs2();
  }
  return r;
}

template SpectralResult diagonalize(const Matrix<double>&, Eigenvectors);
template SpectralResult diagonalize(const Matrix<Complex>&, Eigenvectors);

SpectralResult diagonalize(const AnyMatrix& H, Eigenvectors vectors) {
  return std::visit([&](const auto& m) { return diagonalize(m, vectors); }, H);
}

SpectralResult standardize(const SpectralResult& result) {
  if (!(result.width > 1e-14 * std::max(1.0, std::abs(result.centroid))))
    throw DomainError("standardize: spectrum width is zero");
  SpectralResult out = result;
  out.energies = (result.energies.array() - result.centroid) / result.width;
  out.basis_energies = (result.basis_energies.array() - result.centroid) / result.width;
  out.centroid = 0.0;
  out.width = 1.0;
  return out;
}

}  // namespace qee
