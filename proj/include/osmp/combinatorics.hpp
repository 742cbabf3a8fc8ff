// Exact counting of the truncated subspace and the counting inequalities
// built on it. All counts are arbitrary precision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

#include "osmp/truncation.hpp"

namespace osmp {

using BigInt = boost::multiprecision::cpp_int;

/// C(n, k), exact.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// log2 of a positive big integer from its leading 64 bits and exponent;
/// relative error ~1e-16. Returns -inf for zero.
double log2_big(const BigInt& value);

/// Dimension of span{|n_1..n_m> : sum n_i <= a} = C(a+m, m).
struct RankCount {
  std::size_t modes;
  std::uint64_t cutoff;
  BigInt rank;
  double log2_rank;
};

RankCount count_rank(std::size_t modes, std::uint64_t cutoff);

/// C(n+m, m) against min{(1+m)^n, (1+n)^m}.
struct BinomialBound {
  BigInt lhs;
  BigInt rhs;
};

BinomialBound lemma4_bound(std::uint64_t n, std::uint64_t m);

/// Upper bounds on log2 rank(P) in terms of photons and of modes.
struct LogRankBounds {
  double bound_photon;  // (mu/delta) log2(1+m)
  double bound_mode;    // m log2(1 + mu/delta)
  double actual;        // log2 C(a+m, m)
};

LogRankBounds log_rank_bounds(const TruncationSpec& spec);

/// Binary entropy in bits with 0 log 0 = 0.
double binary_entropy(double p);

struct EntropyBound {
  double log2_rank;  // log2 C(a+m, m)
  double bound;      // (a+m) h(m/(a+m))
};

EntropyBound entropy_bound(std::uint64_t a, std::uint64_t m);

}  // namespace osmp
