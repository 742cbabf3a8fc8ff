#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "osmp/combinatorics.hpp"
#include "osmp/ensembles.hpp"
#include "osmp/smp.hpp"

using namespace osmp;

TEST_SUITE_BEGIN("smp");

TEST_CASE("equality tables") {
  CHECK(equality_function(1) == FunctionTable(2, 2, {1, 0, 0, 1}));
  const auto eq2 = equality_function(2);
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) CHECK(eq2(x, y) == (x == y));
  }
  CHECK_THROWS_AS(equality_function(kMaxTableBits + 1), std::invalid_argument);
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto x = uniform_int(rng, 0, 255);
    const auto y = i % 2 ? x : uniform_int(rng, 0, 255);
    CHECK(equality(x, y) == (x == y));
  }
}

TEST_CASE("deterministic complexity oracle") {
  CHECK(bruteforce_deterministic_cc(FunctionTable(4, 4, std::vector<std::uint8_t>(16, 0))) == 0);
  CHECK(bruteforce_deterministic_cc(equality_function(1)) == 2);
  CHECK(bruteforce_deterministic_cc(equality_function(2)) == 3);
  CHECK(bruteforce_deterministic_cc(equality_function(3)) == 4);
  std::vector<std::uint8_t> gt(16);
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) gt[x * 4 + y] = x > y;
  }
  CHECK(bruteforce_deterministic_cc(FunctionTable(4, 4, gt)) == 3);
  CHECK_THROWS_AS(bruteforce_deterministic_cc(equality_function(4)), std::invalid_argument);
}

TEST_CASE("oracle is monotone under deletion") {
  for (unsigned bits = 0; bits < 16; ++bits) {
    std::vector<std::uint8_t> v(4);
    for (unsigned k = 0; k < 4; ++k) v[k] = (bits >> k) & 1u;
    const FunctionTable f(2, 2, v);
    const int full = bruteforce_deterministic_cc(f);
    CHECK(bruteforce_deterministic_cc(f.submatrix({0}, {0, 1})) <= full);
    CHECK(bruteforce_deterministic_cc(f.submatrix({0, 1}, {1})) <= full);
  }
}

TEST_CASE("codes") {
  const auto rep = repetition_code(4, 3);
  CHECK(rep.length == 12);
  CHECK(rep.min_distance == 3);
  CHECK(rep.encode(0b0101) == std::vector<std::uint8_t>{1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0});
  const auto id = identity_code(3);
  CHECK(id.min_distance == 1);
  // [7,4] Hamming code.
  const auto ham = linear_code({{1, 0, 0, 0, 1, 1, 0},
                                {0, 1, 0, 0, 1, 0, 1},
                                {0, 0, 1, 0, 0, 1, 1},
                                {0, 0, 0, 1, 1, 1, 1}});
  CHECK(ham.min_distance == 3);
  CHECK_THROWS_AS(linear_code({{1, 0}, {1, 0}}), std::invalid_argument);
  CHECK(hamming_distance({0, 1, 1}, {1, 1, 0}) == 2);
}

TEST_CASE("beamsplitter on single photons") {
  const auto out = beamsplitter_pair(PureState::basis(FockIndex{1}), PureState::vacuum(1));
  const double s = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(out.amplitude(FockIndex{1, 0}) - Complex(s)) < 1e-12);
  CHECK(std::abs(out.amplitude(FockIndex{0, 1}) - Complex(s)) < 1e-12);
  CHECK(out.support_size() == 2);
}

TEST_CASE("equal coherent states leave the difference port empty") {
  for (double n : {0.1, 0.5, 1.0}) {
    const Complex alpha(std::sqrt(n) * 0.6, std::sqrt(n) * 0.8);
    const auto in = coherent_state(alpha, 25).state;
    const auto out = beamsplitter_pair(in, in);
    const auto expected = coherent_state(std::sqrt(2.0) * alpha, 50).state;
    double leaked = 0.0;
    for (const auto& [index, amp] : out.terms()) {
      if (index[1] != 0) leaked += std::norm(amp);
    }
    CHECK(leaked < 1e-9);
    for (std::uint32_t k = 0; k <= 25; ++k) {
      CHECK(std::abs(out.amplitude(FockIndex{k, 0}) - expected.amplitude(FockIndex{k})) < 1e-9);
    }
  }
}

TEST_CASE("beamsplitter conserves photon number") {
  Rng rng(29);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_pure_state(rng, 1, 8, 5);
    const auto b = random_pure_state(rng, 1, 8, 5);
    const auto in = photon_number_distribution(tensor(a, b));
    const auto out = photon_number_distribution(beamsplitter_pair(a, b));
    for (const auto& [k, p] : in) CHECK(std::abs(out.count(k) ? out.at(k) - p : p) < 1e-9);
    for (const auto& [k, p] : out) CHECK(std::abs(in.count(k) ? in.at(k) - p : p) < 1e-9);
  }
}

TEST_CASE("fingerprinting matches the coherent closed form") {
  for (double n : {0.1, 0.5, 1.0}) {
    for (int d = 1; d <= 8; ++d) {
      const auto p = coherent_fingerprint_protocol(identity_code(d), n * d);
      const std::uint64_t all = (std::uint64_t{1} << d) - 1;
      const double exact = pair_error(p, 0, all);
      CHECK(std::abs(exact - std::exp(-2.0 * n * d)) < 1e-9);
    }
  }
}

TEST_CASE("fingerprinting is one-sided up to the recorded tail") {
  const auto p = coherent_fingerprint_protocol(repetition_code(4, 3), 2.0);
  CHECK(p.tail_mass < 1e-10);
  for (std::uint64_t x = 0; x < 16; ++x) CHECK(pair_error(p, x, x) <= 2.0 * p.tail_mass);
}

TEST_CASE("repetition instance n=4 m=12 has worst error exp(-1)") {
  const auto p = coherent_fingerprint_protocol(repetition_code(4, 3), 2.0);
  const auto report = evaluate_error(p);
  CHECK(report.per_pair.size() == 256);
  // d_min = 3 and |alpha|^2 = 1/6 give exp(-1) > 1/3.
  CHECK(std::abs(report.worst_error - 0.36787944117144233) < 1e-9);
  const auto code = repetition_code(4, 3);
  CHECK(hamming_distance(code.encode(report.worst_x), code.encode(report.worst_y)) == 3);
}

TEST_CASE("a distance-6 linear code brings the same instance below one third") {
  // Generator of a [12,4,6] code.
  const auto code = linear_code({{1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0},
                                 {0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0},
                                 {1, 1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0},
                                 {0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1}});
  REQUIRE(code.min_distance == 6);
  const auto report = evaluate_error(coherent_fingerprint_protocol(code, 2.0));
  CHECK(std::abs(report.worst_error - std::exp(-2.0)) < 1e-9);
}

TEST_CASE("trivial classical protocol") {
  const auto p = trivial_classical_protocol(2);
  CHECK(p.modes == 2);
  CHECK(p.mu <= 2.0);
  const auto m = std::get<FockDiagonalState>(p.alice(0b10));
  CHECK(m.probability(FockIndex{0, 1}) == 1.0);
  CHECK(evaluate_error(p).worst_error == 0.0);

  // Messages of a length-6 code live in the a = 6 subspace of exactly count_rank states.
  const auto code = repetition_code(3, 2);
  const auto q = trivial_classical_protocol(code);
  std::set<FockIndex> support;
  std::uint64_t a = 0;
  for (std::uint64_t x = 0; x < 8; ++x) {
    const auto message = std::get<FockDiagonalState>(q.alice(x));
    for (const auto& [index, w] : message.weights()) {
      support.insert(index);
      a = std::max(a, total_photons(index));
    }
  }
  const auto basis = enumerate_fock_indices(6, a);
  CHECK(count_rank(6, a).rank == basis.size());
  for (const auto& s : support) CHECK(std::binary_search(basis.begin(), basis.end(), s));
}

TEST_CASE("evaluation is deterministic across job counts") {
  const auto p = coherent_fingerprint_protocol(repetition_code(3, 2), 1.5);
  const auto one = evaluate_error(p);
  EvaluationOptions o;
  o.jobs = 3;
  const auto three = evaluate_error(p, o);
  REQUIRE(one.per_pair.size() == three.per_pair.size());
  for (std::size_t i = 0; i < one.per_pair.size(); ++i) {
    CHECK(one.per_pair[i].x == three.per_pair[i].x);
    CHECK(one.per_pair[i].y == three.per_pair[i].y);
    CHECK(one.per_pair[i].p_error == three.per_pair[i].p_error);
  }
}

TEST_CASE("sampled evaluation needs a seed and reproduces") {
  const auto p = coherent_fingerprint_protocol(repetition_code(4, 3), 2.0);
  EvaluationOptions o;
  o.mode = EvaluationOptions::Mode::sampled;
  o.samples = 40;
  o.shots = 200;
  CHECK_THROWS_AS(evaluate_error(p, o), std::invalid_argument);
  o.seed = 99;
  const auto a = evaluate_error(p, o);
  o.jobs = 2;
  const auto b = evaluate_error(p, o);
  REQUIRE(a.per_pair.size() == 40);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(a.per_pair[i].p_error == b.per_pair[i].p_error);
    CHECK(a.per_pair[i].p_error >= 0.0);
    CHECK(a.per_pair[i].p_error <= 1.0);
  }
  CHECK(a.sampled);
}

TEST_CASE("referee representation checks") {
  FockBasisReferee empty{"empty", {}};
  CHECK_THROWS_AS(output_one_probability(empty, PureState::vacuum(1), PureState::vacuum(1)), incompatible_referee);
  CHECK_THROWS_AS(output_one_probability(InterferenceReferee{}, PureState::vacuum(1), PureState::vacuum(2)),
                  mode_mismatch);
  // A Fock-diagonal message is handled as a mixture of basis kets.
  const FockDiagonalState one_photon = FockDiagonalState::point_mass(FockIndex{1});
  CHECK(output_one_probability(InterferenceReferee{}, one_photon, PureState::vacuum(1)) == doctest::Approx(0.5));
}

TEST_SUITE_END();
