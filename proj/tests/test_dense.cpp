#include <doctest.h>

#include <cmath>
#include <numbers>

#include "osmp/dense.hpp"
#include "osmp/ensembles.hpp"

using namespace osmp;

namespace {

DenseOperator qubit(std::initializer_list<std::initializer_list<Complex>> rows) {
  DenseMatrix<double> m(2, 2);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return DenseOperator({FockIndex{0}, FockIndex{1}}, m);
}

}  // namespace

TEST_SUITE_BEGIN("dense");

TEST_CASE("qubit distances against hand values") {
  const auto zero = qubit({{1.0, 0.0}, {0.0, 0.0}});
  const auto plus = qubit({{0.5, 0.5}, {0.5, 0.5}});
  const auto mixed = qubit({{0.5, 0.0}, {0.0, 0.5}});
  CHECK(trace_distance(zero, plus) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(fidelity(zero, plus) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(trace_distance(zero, mixed) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fidelity(zero, mixed) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(trace_distance(mixed, mixed) == doctest::Approx(0.0));
  CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0));
}

TEST_CASE("psd square root squares back") {
  Rng rng(7);
  const auto rho = random_density_operator(rng, enumerate_fock_indices(2, 3), 4);
  const DenseMatrix<double> r = psd_sqrt(rho.matrix);
  CHECK((r * r - rho.matrix).norm() < 1e-12);
}

TEST_CASE("random density operators are valid") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto basis = random_fock_basis(rng, 32);
    CHECK(basis.size() <= 32);
    const auto rho = random_density_operator(rng, basis, 1 + i % 5);
    CHECK_NOTHROW(require_density_operator(rho));
  }
}

TEST_CASE("perturbation sits at the requested distance") {
  Rng rng(3);
  const PureState psi(1, {{FockIndex{0}, 0.6}, {FockIndex{1}, 0.8}});
  for (double t : {0.0, 0.1, 0.37, 1.0}) {
    const auto phi = perturb(rng, psi, t, {FockIndex{2}});
    CHECK(std::abs(trace_distance(psi, phi) - t) < 1e-12);
  }
}

TEST_CASE("dense operators are validated") {
  CHECK_THROWS_AS(DenseOperator({FockIndex{0}, FockIndex{0}}, DenseMatrix<double>::Identity(2, 2) / 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DenseOperator({FockIndex{0}}, DenseMatrix<double>::Identity(2, 2)), std::invalid_argument);
  const auto big = enumerate_fock_indices(3, 10);  // 286 > cap
  REQUIRE(big.size() > kDenseMaxDim);
  CHECK_THROWS_AS(to_dense(PureState::vacuum(3), big), std::length_error);
  const auto negative = qubit({{1.5, 0.0}, {0.0, -0.5}});
  CHECK_THROWS(require_density_operator(negative));
}

TEST_CASE("pure and dense metrics agree") {
  Rng rng(5);
  const auto basis = enumerate_fock_indices(2, 4);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_pure_state(rng, 2, 4, 6);
    const auto b = random_pure_state(rng, 2, 4, 6);
    CHECK(std::abs(trace_distance(to_dense(a, basis), to_dense(b, basis)) - trace_distance(a, b)) < 1e-9);
    CHECK(std::abs(fidelity(to_dense(a, basis), to_dense(b, basis)) - fidelity(a, b)) < 1e-9);
  }
}

TEST_SUITE_END();
