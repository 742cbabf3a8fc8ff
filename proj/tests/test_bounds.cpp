#include <doctest.h>

#include <cmath>

#include "osmp/bounds.hpp"

using namespace osmp;

TEST_SUITE_BEGIN("bounds");

TEST_CASE("quantum tradeoff terms") {
  const auto big = quantum_tradeoff_lhs(1024, 2.0, 1e-4);
  CHECK(big.term_photon == doctest::Approx(20.0));
  // 1024 log2(20001), evaluated independently.
  CHECK(std::abs(big.term_mode - 14630.691340798141) < 1e-6);
  CHECK(big.lhs_min == doctest::Approx(20.0));
  CHECK(quantum_tradeoff_lhs(2, 0.0, 1e-4).lhs_min == 0.0);
  const auto unit = quantum_tradeoff_lhs(2, 1.0, 1e-4);
  CHECK(unit.term_photon == doctest::Approx(1.0));
  CHECK(unit.lhs_min == doctest::Approx(1.0));
  CHECK_THROWS_AS(quantum_tradeoff_lhs(1, 1.0, 1e-4), std::invalid_argument);
}

TEST_CASE("classical tradeoff") {
  CHECK(std::abs(classical_tradeoff_lhs(2, 1.0, 0.5) - 2.584962500721156) < 1e-12);
  CHECK(classical_tradeoff_lhs(1, 0.0, 0.5) == 0.0);
}

TEST_CASE("equality references") {
  const auto refs = equality_references(2);
  REQUIRE(refs.size() == 3);
  CHECK(refs[0].exact == 3);
  CHECK(!equality_references(5)[0].exact);
  CHECK(to_string(ComplexityKind::quantum_smp) == "Q||");
}

TEST_CASE("reports") {
  ProtocolParams p;
  p.m = 4;
  p.mu = 1.0;
  p.delta = 0.5;
  const auto bare = build_report(p, {});
  CHECK(bare.cutoff == 2);
  CHECK(!bare.d_exact);
  CHECK(bare.notes == "log2;mu=per-party-max");
  CHECK(std::abs(bare.log2_rank - std::log2(15.0)) < 1e-12);

  const auto family = qfp_family({16}, 2.0, 3, 1e-4);
  REQUIRE(family.size() == 1);
  CHECK(family[0].first.m == 48);
  const auto r = build_report(family[0].first, equality_references(16), family[0].second);
  CHECK(r.notes.find("src=qfp") != std::string::npos);

  auto wrong = family[0].first;
  wrong.m = 12;
  CHECK_THROWS_AS(build_report(wrong, {}, family[0].second), std::invalid_argument);
}

TEST_CASE("csv schema") {
  CHECK(report_csv_header() ==
        "n,m,mu,delta,a,log2_rank,term_photon,term_mode,lhs_min,classical_lhs,entropy_bound,D_exact,notes");
  ProtocolParams p;
  p.n = 2;
  p.m = 2;
  p.mu = 1.0;
  p.delta = 0.5;
  const auto row = report_csv_row(build_report(p, equality_references(2)));
  CHECK(row.rfind("2,2,1,0.5,2,2.58496250072,", 0) == 0);
  CHECK(row.find(",3,log2;") != std::string::npos);
}

TEST_CASE("rows sort by n, m, mu, delta") {
  std::vector<TradeoffReport> rs(3);
  rs[0].params.m = 5;
  rs[1].params.m = 3;
  rs[2].params.m = 4;
  rs[2].params.n = 1;
  sort_reports(rs);
  CHECK(rs[0].params.m == 3);
  CHECK(rs[1].params.m == 5);
  CHECK(rs[2].params.n == 1);
}

TEST_SUITE_END();
