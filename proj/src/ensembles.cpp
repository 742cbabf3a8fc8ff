#include "osmp/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace osmp {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + v % span;
}

double standard_normal(Rng& rng) {
  double u1;
  do {
    u1 = uniform01(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex complex_normal(Rng& rng) {
  const double re = standard_normal(rng);
  return {re, standard_normal(rng)};
}

namespace {

FockIndex random_index(Rng& rng, std::size_t modes, std::uint64_t max_total) {
  std::vector<std::uint32_t> occ(modes, 0);
  std::uint64_t budget = uniform_int(rng, 0, max_total);
  // Scatter `budget` photons over the modes one at a time.
  while (budget-- > 0) ++occ[uniform_int(rng, 0, modes - 1)];
  return FockIndex(std::move(occ));
}

}  // namespace

PureState random_pure_state(Rng& rng, std::size_t modes, std::uint64_t max_total,
                            std::size_t max_support) {
  const std::size_t support = uniform_int(rng, 1, max_support);
  PureState::Terms terms;
  for (std::size_t i = 0; i < support; ++i) terms[random_index(rng, modes, max_total)] = complex_normal(rng);
  return PureState(modes, std::move(terms));
}

FockDiagonalState random_diagonal_state(Rng& rng, std::size_t modes, std::uint64_t max_total,
                                        std::size_t max_support) {
  const std::size_t support = uniform_int(rng, 1, max_support);
  FockDiagonalState::Weights weights;
  for (std::size_t i = 0; i < support; ++i) {
    weights[random_index(rng, modes, max_total)] = uniform01(rng) + 1e-3;
  }
  return FockDiagonalState(modes, std::move(weights));
}

std::vector<FockIndex> random_fock_basis(Rng& rng, std::size_t max_dim) {
  const std::size_t modes = uniform_int(rng, 1, 3);
  std::uint64_t a = 0;
  while (enumerate_fock_indices(modes, a + 1).size() <= max_dim) ++a;
  return enumerate_fock_indices(modes, uniform_int(rng, 1, std::max<std::uint64_t>(a, 1)));
}

DenseOperator random_density_operator(Rng& rng, std::vector<FockIndex> basis, std::size_t rank) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  if (rank == 0) throw std::invalid_argument("random_density_operator: rank must be >= 1");
  DenseMatrix<double> g(dim, static_cast<Eigen::Index>(rank));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = complex_normal(rng);
  }
  DenseMatrix<double> rho = g * g.adjoint();
  rho /= rho.trace();
  rho = hermitian_part(rho);
  return DenseOperator(std::move(basis), std::move(rho));
}

PureState perturb(Rng& rng, const PureState& psi, double t, const std::vector<FockIndex>& extra) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("perturb: t must lie in [0,1]");
  PureState::Terms dir;
  for (const auto& [index, amp] : psi.terms()) dir[index] = complex_normal(rng);
  for (const auto& index : extra) dir[index] = complex_normal(rng);
  // Gram-Schmidt against psi.
  Complex proj{};
  for (const auto& [index, amp] : psi.terms()) proj += std::conj(amp) * dir[index];
  for (const auto& [index, amp] : psi.terms()) dir[index] -= proj * amp;
  double norm = 0.0;
  for (const auto& [index, v] : dir) norm += std::norm(v);
  if (!(norm > 1e-20)) throw std::invalid_argument("perturb: no orthogonal direction available");
  const double scale = t / std::sqrt(norm);
  const double keep = std::sqrt(1.0 - t * t);
  PureState::Terms out;
  for (const auto& [index, v] : dir) out[index] = v * scale;
  for (const auto& [index, amp] : psi.terms()) out[index] += keep * amp;
  return PureState(psi.modes(), std::move(out));
}

}  // namespace osmp
