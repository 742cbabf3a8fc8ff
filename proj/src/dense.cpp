#include "osmp/dense.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace osmp {

namespace {

void require_same_basis(const DenseOperator& a, const DenseOperator& b) {
  if (a.basis != b.basis) {
    throw std::invalid_argument("dense operators are expressed on different bases");
  }
}

}  // namespace

DenseOperator::DenseOperator(std::vector<FockIndex> basis_in, DenseMatrix<double> matrix_in)
    : basis(std::move(basis_in)), matrix(std::move(matrix_in)) {
  if (basis.empty()) throw std::invalid_argument("DenseOperator: empty basis");
  if (basis.size() > kDenseMaxDim) {
    throw std::length_error("DenseOperator: dimension " + std::to_string(basis.size()) +
                            " exceeds " + std::to_string(kDenseMaxDim));
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw std::invalid_argument("DenseOperator: matrix shape does not match basis");
  }
  const std::size_t m = basis.front().modes();
  std::set<FockIndex> seen;
  for (const auto& b : basis) {
    if (b.modes() != m) throw mode_mismatch("DenseOperator: basis mixes mode counts");
    if (!seen.insert(b).second) throw std::invalid_argument("DenseOperator: repeated basis vector");
  }
}

void require_density_operator(const DenseOperator& rho) {
  const auto& a = rho.matrix;
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("density operator is not Hermitian");
  }
  if (std::abs(a.trace() - std::complex<double>(1.0)) > 1e-9) {
    throw std::invalid_argument("density operator trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix<double>> solver(hermitian_part(a),
                                                            Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-9) {
    throw std::invalid_argument("density operator has a negative eigenvalue");
  }
}

DenseOperator to_dense(const PureState& psi, const std::vector<FockIndex>& basis) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  std::size_t found = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto amp = psi.amplitude(basis[i]);
    if (amp != Complex{}) ++found;
    v(static_cast<Eigen::Index>(i)) = amp;
  }
  if (found != psi.support_size()) {
    throw std::invalid_argument("to_dense: state has support outside the basis");
  }
  return DenseOperator(basis, v * v.adjoint());
}

DenseOperator to_dense(const FockDiagonalState& state, const std::vector<FockIndex>& basis) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  std::size_t found = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double p = state.probability(basis[i]);
    if (p != 0.0) ++found;
    d(static_cast<Eigen::Index>(i)) = p;
  }
  if (found != state.support_size()) {
    throw std::invalid_argument("to_dense: state has support outside the basis");
  }
  return DenseOperator(basis, d.cast<std::complex<double>>().asDiagonal());
}

Eigen::VectorXd cutoff_mask(const std::vector<FockIndex>& basis, std::uint64_t cutoff) {
  Eigen::VectorXd mask(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    mask(static_cast<Eigen::Index>(i)) = total_photons(basis[i]) <= cutoff ? 1.0 : 0.0;
  }
  return mask;
}

double retained_weight(const DenseOperator& rho, std::uint64_t cutoff) {
  return rho.matrix.diagonal().real().dot(cutoff_mask(rho.basis, cutoff));
}

double trace_distance(const DenseOperator& rho, const DenseOperator& sigma) {
  require_same_basis(rho, sigma);
  return trace_distance(rho.matrix, sigma.matrix);
}

double fidelity(const DenseOperator& rho, const DenseOperator& sigma) {
  require_same_basis(rho, sigma);
  return fidelity(rho.matrix, sigma.matrix);
}

}  // namespace osmp
