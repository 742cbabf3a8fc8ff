// Small dense density operators over an explicit Fock basis, used to check
// distance and fidelity statements on genuinely mixed states.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "osmp/fock.hpp"

namespace osmp {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest basis a DenseOperator may use.
inline constexpr std::size_t kDenseMaxDim = 256;

/// Eigenvalues of a PSD matrix below this fraction of the largest one are
/// treated as exact zeros when taking square roots.
inline constexpr double kPsdCutoffRelative = 1e-14;

/// Hermitian part of a matrix, (A + A^dagger)/2.
template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  Plain out = (a + a.adjoint()) / typename Derived::Scalar(2);
  return out;
}

/// Trace norm of a Hermitian matrix: the sum of absolute eigenvalues.
template <typename Derived>
typename Derived::RealScalar trace_norm_hermitian(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

/// Trace distance (1/2)||rho - sigma||_1 of two Hermitian matrices.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar trace_distance(const Eigen::MatrixBase<DerivedA>& rho,
                                             const Eigen::MatrixBase<DerivedB>& sigma) {
  using Real = typename DerivedA::RealScalar;
  typename DerivedA::PlainObject diff = rho - sigma;
  return std::min(Real(1), trace_norm_hermitian(diff) / Real(2));
}

/// Principal square root of a positive semidefinite matrix. Tiny and
/// slightly negative eigenvalues (round-off) are clamped to zero.
template <typename Derived>
typename Derived::PlainObject psd_sqrt(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  using Real = typename Derived::RealScalar;
  Eigen::SelfAdjointEigenSolver<Plain> solver(hermitian_part(a));
  auto values = solver.eigenvalues();
  const Real top = std::max(Real(0), values.maxCoeff());
  const Real floor = top * Real(kPsdCutoffRelative);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values(i) = values(i) > floor ? std::sqrt(values(i)) : Real(0);
  }
  return solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Uhlmann fidelity F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1 (root convention,
/// so F = |<psi|phi>| on pure states).
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar fidelity(const Eigen::MatrixBase<DerivedA>& rho,
                                       const Eigen::MatrixBase<DerivedB>& sigma) {
  using Real = typename DerivedA::RealScalar;
  using Plain = typename DerivedA::PlainObject;
  const Plain prod = psd_sqrt(rho) * psd_sqrt(sigma);
  Eigen::JacobiSVD<Plain> svd(prod);
  return std::min(Real(1), svd.singularValues().sum());
}

/// A density operator (or observable) on an explicit list of Fock basis vectors.
struct DenseOperator {
  std::vector<FockIndex> basis;
  DenseMatrix<double> matrix;

  /// Validates shape, basis consistency and the dimension cap.
  DenseOperator(std::vector<FockIndex> basis, DenseMatrix<double> matrix);

  std::size_t dim() const { return basis.size(); }
  std::size_t modes() const { return basis.front().modes(); }
};

/// Throws unless the operator is Hermitian, unit-trace and PSD within 1e-9.
void require_density_operator(const DenseOperator& rho);

/// |psi><psi| on the given basis. Amplitudes outside the basis are an error.
DenseOperator to_dense(const PureState& psi, const std::vector<FockIndex>& basis);
DenseOperator to_dense(const FockDiagonalState& state, const std::vector<FockIndex>& basis);

/// Diagonal 0/1 mask selecting basis vectors with total photons <= cutoff.
Eigen::VectorXd cutoff_mask(const std::vector<FockIndex>& basis, std::uint64_t cutoff);

/// tr(P rho) for the total-photon projector P at `cutoff`.
double retained_weight(const DenseOperator& rho, std::uint64_t cutoff);

double trace_distance(const DenseOperator& rho, const DenseOperator& sigma);
double fidelity(const DenseOperator& rho, const DenseOperator& sigma);

}  // namespace osmp
