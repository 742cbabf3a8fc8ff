#include "osmp/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace osmp {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  // acc = C(n-k+i, i) after step i; each division is exact.
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

double log2_big(const BigInt& value) {
  if (value < 0) throw std::domain_error("log2 of a negative integer");
  if (value == 0) return -std::numeric_limits<double>::infinity();
  const std::size_t msb = boost::multiprecision::msb(value);
  if (msb < 63) return std::log2(static_cast<double>(static_cast<std::uint64_t>(value)));
  const std::size_t shift = msb - 63;
  const auto top = static_cast<std::uint64_t>(value >> shift);
  return static_cast<double>(shift) + std::log2(static_cast<double>(top));
}

RankCount count_rank(std::size_t modes, std::uint64_t cutoff) {
  if (modes == 0) throw std::invalid_argument("count_rank: mode count must be positive");
  BigInt rank = binomial(cutoff + modes, modes);
  const double bits = log2_big(rank);
  return RankCount{modes, cutoff, std::move(rank), bits};
}

BinomialBound lemma4_bound(std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("lemma4_bound: n and m must be >= 1");
  if (n > std::numeric_limits<unsigned>::max() || m > std::numeric_limits<unsigned>::max()) {
    throw std::invalid_argument("lemma4_bound: exponent too large");
  }
  BigInt by_photons = boost::multiprecision::pow(BigInt(1 + m), static_cast<unsigned>(n));
  BigInt by_modes = boost::multiprecision::pow(BigInt(1 + n), static_cast<unsigned>(m));
  return BinomialBound{binomial(n + m, m), std::min(by_photons, by_modes)};
}

LogRankBounds log_rank_bounds(const TruncationSpec& spec) {
  if (spec.modes == 0) throw std::invalid_argument("log_rank_bounds: mode count must be positive");
  const double ratio = spec.mu / spec.delta;
  const auto m = static_cast<double>(spec.modes);
  return LogRankBounds{ratio * std::log2(1.0 + m), m * std::log2(1.0 + ratio),
                       count_rank(spec.modes, spec.cutoff).log2_rank};
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0,1]");
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1.0 - p);
}

EntropyBound entropy_bound(std::uint64_t a, std::uint64_t m) {
  if (a + m == 0) throw std::invalid_argument("entropy_bound: a + m must be >= 1");
  const auto total = static_cast<double>(a + m);
  const double bound = total * binary_entropy(static_cast<double>(m) / total);
  return EntropyBound{log2_big(binomial(a + m, m)), bound};
}

}  // namespace osmp
