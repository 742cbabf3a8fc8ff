#include <doctest.h>

#include <cmath>
#include <numbers>

#include "osmp/fock.hpp"

using namespace osmp;

TEST_SUITE_BEGIN("fock");

TEST_CASE("total photons of occupation tuples") {
  CHECK(total_photons(FockIndex{0, 0, 0}) == 0);
  CHECK(total_photons(FockIndex{2, 3}) == 5);
  CHECK(total_photons(FockIndex{1, 1, 1, 1}) == 4);
}

TEST_CASE("fock index rejects zero modes") {
  CHECK_THROWS_AS(FockIndex(std::vector<std::uint32_t>{}), std::invalid_argument);
}

TEST_CASE("mean photon number") {
  CHECK(mean_photon_number(PureState::vacuum(3)) == 0.0);
  CHECK(mean_photon_number(PureState::basis(FockIndex{2, 3})) == doctest::Approx(5.0));
  // Poisson mean oracle: sum_{k<=20} k e^-1/k! / sum_{k<=20} e^-1/k!.
  const auto coh = coherent_state(Complex(1.0, 0.0), 20);
  CHECK(std::abs(mean_photon_number(coh.state) - 1.0) < 1e-6);
}

TEST_CASE("photon number distribution") {
  const auto one = photon_number_distribution(PureState::basis(FockIndex{1, 0}));
  REQUIRE(one.size() == 1);
  CHECK(one.at(1) == doctest::Approx(1.0));

  const double s = 1.0 / std::numbers::sqrt2;
  const PureState bell(2, {{FockIndex{0, 0}, s}, {FockIndex{1, 1}, s}});
  const auto d = photon_number_distribution(bell);
  CHECK(d.at(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.at(2) == doctest::Approx(0.5).epsilon(1e-12));

  // Renormalized Poisson weights over k <= 3: {6, 6, 3, 1} / 16.
  const auto coh = photon_number_distribution(coherent_state(Complex(1.0, 0.0), 3).state);
  CHECK(std::abs(coh.at(0) - 0.375) < 1e-12);
  CHECK(std::abs(coh.at(1) - 0.375) < 1e-12);
  CHECK(std::abs(coh.at(2) - 0.1875) < 1e-12);
  CHECK(std::abs(coh.at(3) - 0.0625) < 1e-12);
}

TEST_CASE("product distribution is the convolution of its factors") {
  const auto a = std::make_shared<const PureState>(coherent_state(Complex(0.7, 0.2), 6).state);
  const auto b = std::make_shared<const PureState>(coherent_state(Complex(-0.4, 0.0), 5).state);
  const ProductState prod({a, b, a});
  const auto direct = photon_number_distribution(prod.expand());
  const auto conv = photon_number_distribution(prod);
  REQUIRE(direct.size() == conv.size());
  for (const auto& [k, p] : direct) CHECK(std::abs(conv.at(k) - p) < 1e-12);
  CHECK(std::abs(mean_photon_number(prod) - mean_photon_number(prod.expand())) < 1e-12);
  CHECK(prod.max_total_photons() == 17);
}

TEST_CASE("coherent state tail bookkeeping") {
  const auto c = coherent_state_with_tail(Complex(1.0, 0.0), 1e-10);
  CHECK(c.tail_mass < 1e-10);
  CHECK(c.tail_mass > 0.0);
  const auto shorter = coherent_state(Complex(1.0, 0.0), c.cutoff - 1);
  CHECK(shorter.tail_mass >= 1e-10);
}

TEST_CASE("tensor products") {
  CHECK(tensor(PureState::vacuum(1), PureState::vacuum(2)).terms() == PureState::vacuum(3).terms());
  const auto t = tensor(PureState::basis(FockIndex{1}), PureState::basis(FockIndex{2}));
  CHECK(t.modes() == 2);
  CHECK(std::abs(t.amplitude(FockIndex{1, 2}) - Complex(1.0)) < 1e-15);
  const auto d = tensor(FockDiagonalState::point_mass(FockIndex{1}), FockDiagonalState::point_mass(FockIndex{0, 4}));
  CHECK(d.probability(FockIndex{1, 0, 4}) == doctest::Approx(1.0));
}

TEST_CASE("support cap is enforced by tensor") {
  PureState::Terms terms;
  for (std::uint32_t k = 0; k < 1001; ++k) terms[FockIndex{k}] = 1.0;
  const PureState wide(1, terms);
  CHECK_THROWS_AS(tensor(wide, wide), support_cap_exceeded);
}

TEST_CASE("distances between sparse states") {
  const PureState a = PureState::basis(FockIndex{1, 0});
  const PureState b = PureState::basis(FockIndex{0, 1});
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  CHECK(fidelity(a, b) == doctest::Approx(0.0));
  CHECK(fidelity(a, a) == doctest::Approx(1.0));
  CHECK_THROWS_AS(trace_distance(a, PureState::vacuum(3)), mode_mismatch);

  const FockDiagonalState p(1, {{FockIndex{0}, 0.5}, {FockIndex{1}, 0.5}});
  const FockDiagonalState q(1, {{FockIndex{0}, 1.0}});
  CHECK(trace_distance(p, q) == doctest::Approx(0.5));
  CHECK(fidelity(p, q) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("states are validated") {
  CHECK_THROWS_AS(PureState(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(PureState(2, {{FockIndex{1}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FockDiagonalState(1, {{FockIndex{0}, -0.1}, {FockIndex{1}, 1.1}}), std::invalid_argument);
  const PureState unnormalized(1, {{FockIndex{0}, 3.0}, {FockIndex{1}, 4.0}});
  CHECK(std::abs(unnormalized.amplitude(FockIndex{1}) - Complex(0.8)) < 1e-15);
}

TEST_CASE("enumeration of occupation tuples") {
  const auto all = enumerate_fock_indices(2, 3);
  CHECK(all.size() == 10);
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (const auto& i : all) CHECK(total_photons(i) <= 3);
}

TEST_SUITE_END();
