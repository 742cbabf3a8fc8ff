#include <doctest.h>

#include <cmath>

#include "osmp/combinatorics.hpp"
#include "osmp/fock.hpp"

using namespace osmp;

TEST_SUITE_BEGIN("combinatorics");

TEST_CASE("binomials are exact") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(100, 50).str() == "100891344545564193334812497256");
}

TEST_CASE("rank counts") {
  CHECK(count_rank(2, 3).rank == 10);
  for (std::uint64_t k = 0; k < 20; ++k) CHECK(count_rank(1, k).rank == k + 1);
  CHECK(count_rank(3, 0).rank == 1);
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::uint64_t a = 0; a <= 8; ++a) {
      CHECK(count_rank(m, a).rank == enumerate_fock_indices(m, a).size());
    }
  }
}

TEST_CASE("log2 of big integers") {
  CHECK(std::abs(log2_big(binomial(200, 100)) - 195.85052047908917) < 1e-9);
  CHECK(log2_big(BigInt(1) << 300) == doctest::Approx(300.0));
  CHECK(std::isinf(log2_big(BigInt(0))));
}

TEST_CASE("binomial bound") {
  const auto small = lemma4_bound(3, 2);
  CHECK(small.lhs == 10);
  CHECK(small.rhs == 16);
  const auto unit = lemma4_bound(1, 1);
  CHECK(unit.lhs == 2);
  CHECK(unit.rhs == 2);
  for (std::uint64_t n = 1; n <= 50; ++n) {
    for (std::uint64_t m = 1; m <= 50; ++m) {
      const auto b = lemma4_bound(n, m);
      CHECK(b.lhs <= b.rhs);
    }
  }
}

TEST_CASE("log rank bounds") {
  const auto b = log_rank_bounds(markov_cutoff(1.0, 0.5, 2));
  CHECK(std::abs(b.actual - 2.584962500721156) < 1e-12);
  CHECK(b.actual <= std::min(b.bound_photon, b.bound_mode) + 1e-9);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(std::abs(binary_entropy(0.11) - 0.499915958164528) < 1e-12);
  CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
}

TEST_CASE("entropy bound") {
  const auto e = entropy_bound(4, 4);
  CHECK(std::abs(e.log2_rank - 6.129283016944966) < 1e-12);
  CHECK(e.bound == doctest::Approx(8.0));
  const auto z = entropy_bound(0, 1);
  CHECK(z.log2_rank == 0.0);
  CHECK(z.bound == 0.0);
  const auto big = entropy_bound(100, 100);
  CHECK(big.bound == doctest::Approx(200.0));
  CHECK(big.log2_rank <= big.bound);
}

TEST_SUITE_END();
