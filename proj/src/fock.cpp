#include "osmp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace osmp {

namespace {

void check_key(const FockIndex& index, std::size_t modes) {
  if (index.modes() != modes) {
    throw mode_mismatch("Fock index " + to_string(index) + " has " +
                        std::to_string(index.modes()) + " modes, state has " +
                        std::to_string(modes));
  }
}

void require_same_modes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw mode_mismatch("mode counts differ: " + std::to_string(a) + " vs " +
                        std::to_string(b));
  }
}

template <typename Map, typename Magnitude>
void prune_and_normalize(Map& terms, Magnitude&& weight_of, const char* what) {
  auto total = [&] {
    double sum = 0.0;
    for (const auto& [key, value] : terms) sum += weight_of(value);
    return sum;
  };
  double norm = total();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument(std::string(what) + ": zero or non-finite norm");
  }
  std::erase_if(terms, [&](const auto& kv) {
    return std::sqrt(weight_of(kv.second) / norm) < kPruneThreshold;
  });
  if (!(total() > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": every term was pruned");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// FockIndex

FockIndex::FockIndex(std::vector<std::uint32_t> occupations)
    : occupations_(std::move(occupations)) {
  if (occupations_.empty()) {
    throw std::invalid_argument("FockIndex needs at least one mode");
  }
}

FockIndex FockIndex::vacuum(std::size_t modes) {
  return FockIndex(std::vector<std::uint32_t>(modes, 0));
}

FockIndex FockIndex::concat(const FockIndex& other) const {
  std::vector<std::uint32_t> joined = occupations_;
  joined.insert(joined.end(), other.occupations_.begin(), other.occupations_.end());
  return FockIndex(std::move(joined));
}

std::uint64_t total_photons(const FockIndex& index) {
  auto occ = index.occupations();
  return std::accumulate(occ.begin(), occ.end(), std::uint64_t{0});
}

std::string to_string(const FockIndex& index) {
  std::ostringstream out;
  out << '|';
  for (std::size_t i = 0; i < index.modes(); ++i) {
    if (i) out << ',';
    out << index[i];
  }
  out << '>';
  return out.str();
}

std::vector<FockIndex> enumerate_fock_indices(std::size_t modes, std::uint64_t max_total) {
  if (modes == 0) throw std::invalid_argument("enumerate_fock_indices: zero modes");
  std::vector<FockIndex> out;
  std::vector<std::uint32_t> occ(modes, 0);
  // Odometer over tuples, last mode fastest, pruned by the running total.
  std::uint64_t total = 0;
  while (true) {
    out.emplace_back(occ);
    if (out.size() > kSupportCap) {
      throw support_cap_exceeded("enumerate_fock_indices: more than kSupportCap tuples");
    }
    std::size_t pos = modes;
    while (pos > 0) {
      --pos;
      if (total < max_total) {
        ++occ[pos];
        ++total;
        break;
      }
      total -= occ[pos];
      occ[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(std::size_t modes, Terms terms) : modes_(modes), terms_(std::move(terms)) {
  if (modes_ == 0) throw std::invalid_argument("PureState needs at least one mode");
  for (const auto& [index, amp] : terms_) check_key(index, modes_);
  prune_and_normalize(terms_, [](const Complex& a) { return std::norm(a); }, "PureState");
  if (terms_.size() > kSupportCap) {
    throw support_cap_exceeded("PureState support " + std::to_string(terms_.size()) +
                               " exceeds cap");
  }
  double norm = 0.0;
  for (const auto& [index, amp] : terms_) norm += std::norm(amp);
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& [index, amp] : terms_) amp *= scale;
}

PureState PureState::basis(FockIndex index) {
  const std::size_t m = index.modes();
  return PureState(m, Terms{{std::move(index), Complex(1.0, 0.0)}});
}

PureState PureState::vacuum(std::size_t modes) { return basis(FockIndex::vacuum(modes)); }

Complex PureState::amplitude(const FockIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Complex{} : it->second;
}

// ---------------------------------------------------------------------------
// FockDiagonalState

FockDiagonalState::FockDiagonalState(std::size_t modes, Weights weights)
    : modes_(modes), weights_(std::move(weights)) {
  if (modes_ == 0) throw std::invalid_argument("FockDiagonalState needs at least one mode");
  for (const auto& [index, p] : weights_) {
    check_key(index, modes_);
    if (!(p >= 0.0)) {
      throw std::invalid_argument("FockDiagonalState: negative probability at " +
                                  to_string(index));
    }
  }
  // Probabilities are compared on the amplitude scale, sqrt(p) < threshold.
  prune_and_normalize(weights_, [](double p) { return p; }, "FockDiagonalState");
  if (weights_.size() > kSupportCap) {
    throw support_cap_exceeded("FockDiagonalState support exceeds cap");
  }
  double sum = 0.0;
  for (const auto& [index, p] : weights_) sum += p;
  for (auto& [index, p] : weights_) p /= sum;
}

FockDiagonalState FockDiagonalState::point_mass(FockIndex index) {
  const std::size_t m = index.modes();
  return FockDiagonalState(m, Weights{{std::move(index), 1.0}});
}

double FockDiagonalState::probability(const FockIndex& index) const {
  auto it = weights_.find(index);
  return it == weights_.end() ? 0.0 : it->second;
}

// ---------------------------------------------------------------------------
// ProductState

ProductState::ProductState(std::vector<Factor> factors, double tail_mass)
    : factors_(std::move(factors)), tail_mass_(tail_mass) {
  if (factors_.empty()) throw std::invalid_argument("ProductState needs at least one factor");
  for (const auto& f : factors_) {
    if (!f) throw std::invalid_argument("ProductState: null factor");
    if (f->modes() != 1) throw mode_mismatch("ProductState factors must be single-mode");
  }
  if (!(tail_mass_ >= 0.0)) throw std::invalid_argument("ProductState: negative tail mass");
}

std::uint64_t ProductState::max_total_photons() const {
  std::uint64_t total = 0;
  for (const auto& f : factors_) total += total_photons(f->terms().rbegin()->first);
  return total;
}

std::size_t ProductState::expanded_support_size() const {
  std::size_t size = 1;
  for (const auto& f : factors_) {
    const std::size_t s = f->support_size();
    if (size > std::numeric_limits<std::size_t>::max() / s) {
      return std::numeric_limits<std::size_t>::max();
    }
    size *= s;
  }
  return size;
}

PureState ProductState::expand() const {
  if (expanded_support_size() > kSupportCap) {
    throw support_cap_exceeded("ProductState expansion needs " +
                               std::to_string(expanded_support_size()) + " terms");
  }
  PureState acc = *factors_.front();
  for (std::size_t i = 1; i < factors_.size(); ++i) acc = tensor(acc, *factors_[i]);
  return acc;
}

std::size_t modes(const Message& message) {
  return std::visit([](const auto& s) { return s.modes(); }, message);
}

// ---------------------------------------------------------------------------
// Coherent states

TruncatedCoherent coherent_state(Complex alpha, std::uint32_t cutoff) {
  const double lambda = std::norm(alpha);
  PureState::Terms terms;
  // a_k = e^{-|alpha|^2/2} alpha^k / sqrt(k!), built recursively.
  Complex amp(std::exp(-lambda / 2.0), 0.0);
  for (std::uint32_t k = 0; k <= cutoff; ++k) {
    if (k > 0) amp *= alpha / std::sqrt(static_cast<double>(k));
    terms.emplace(FockIndex{k}, amp);
  }
  // Tail summed directly so that tiny tails keep full relative precision.
  double tail = 0.0;
  double term = std::norm(amp);
  for (std::uint64_t k = cutoff + 1ull;; ++k) {
    term *= lambda / static_cast<double>(k);
    tail += term;
    if (term <= tail * 1e-17 || term == 0.0) break;
  }
  if (lambda == 0.0) tail = 0.0;
  return {PureState(1, std::move(terms)), cutoff, tail};
}

TruncatedCoherent coherent_state_with_tail(Complex alpha, double max_tail) {
  if (!(max_tail > 0.0)) throw std::invalid_argument("coherent_state_with_tail: max_tail <= 0");
  const double lambda = std::norm(alpha);
  // Walk the Poisson pmf until the remaining mass drops below max_tail.
  double pmf = std::exp(-lambda);
  double cdf = pmf;
  std::uint32_t cutoff = 0;
  while (1.0 - cdf > max_tail * 0.5 && cutoff < 100000) {
    ++cutoff;
    pmf *= lambda / cutoff;
    cdf += pmf;
  }
  auto out = coherent_state(alpha, cutoff);
  while (out.tail_mass >= max_tail) out = coherent_state(alpha, ++cutoff);
  while (cutoff > 0) {
    auto smaller = coherent_state(alpha, cutoff - 1);
    if (smaller.tail_mass >= max_tail) break;
    out = std::move(smaller);
    --cutoff;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Photon-number statistics

double mean_photon_number(const PureState& state) {
  double mean = 0.0;
  for (const auto& [index, amp] : state.terms()) {
    mean += static_cast<double>(total_photons(index)) * std::norm(amp);
  }
  return mean;
}

double mean_photon_number(const FockDiagonalState& state) {
  double mean = 0.0;
  for (const auto& [index, p] : state.weights()) {
    mean += static_cast<double>(total_photons(index)) * p;
  }
  return mean;
}

double mean_photon_number(const ProductState& state) {
  double mean = 0.0;
  for (const auto& f : state.factors()) mean += mean_photon_number(*f);
  return mean;
}

double mean_photon_number(const Message& state) {
  return std::visit([](const auto& s) { return mean_photon_number(s); }, state);
}

PhotonDistribution photon_number_distribution(const PureState& state) {
  PhotonDistribution dist;
  for (const auto& [index, amp] : state.terms()) dist[total_photons(index)] += std::norm(amp);
  return dist;
}

PhotonDistribution photon_number_distribution(const FockDiagonalState& state) {
  PhotonDistribution dist;
  for (const auto& [index, p] : state.weights()) dist[total_photons(index)] += p;
  return dist;
}

PhotonDistribution photon_number_distribution(const ProductState& state) {
  std::vector<double> acc{1.0};
  for (const auto& f : state.factors()) {
    const auto single = photon_number_distribution(*f);
    const std::size_t top = single.rbegin()->first;
    std::vector<double> next(acc.size() + top, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0.0) continue;
      for (const auto& [k, p] : single) next[i + k] += acc[i] * p;
    }
    acc = std::move(next);
  }
  PhotonDistribution dist;
  for (std::size_t n = 0; n < acc.size(); ++n) {
    if (acc[n] != 0.0) dist[n] = acc[n];
  }
  return dist;
}

PhotonDistribution photon_number_distribution(const Message& state) {
  return std::visit([](const auto& s) { return photon_number_distribution(s); }, state);
}

double probability_at_least(const PhotonDistribution& distribution, std::uint64_t a) {
  double p = 0.0;
  for (auto it = distribution.lower_bound(a); it != distribution.end(); ++it) p += it->second;
  return p;
}

// ---------------------------------------------------------------------------
// Composition

PureState tensor(const PureState& a, const PureState& b) {
  if (a.support_size() * b.support_size() > kSupportCap) {
    throw support_cap_exceeded("tensor: product support exceeds cap");
  }
  PureState::Terms terms;
  for (const auto& [ia, xa] : a.terms()) {
    for (const auto& [ib, xb] : b.terms()) terms.emplace(ia.concat(ib), xa * xb);
  }
  return PureState(a.modes() + b.modes(), std::move(terms));
}

FockDiagonalState tensor(const FockDiagonalState& a, const FockDiagonalState& b) {
  if (a.support_size() * b.support_size() > kSupportCap) {
    throw support_cap_exceeded("tensor: product support exceeds cap");
  }
  FockDiagonalState::Weights weights;
  for (const auto& [ia, pa] : a.weights()) {
    for (const auto& [ib, pb] : b.weights()) weights.emplace(ia.concat(ib), pa * pb);
  }
  return FockDiagonalState(a.modes() + b.modes(), std::move(weights));
}

ProductState tensor(const ProductState& a, const ProductState& b) {
  auto factors = a.factors();
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  return ProductState(std::move(factors), a.tail_mass() + b.tail_mass());
}

// ---------------------------------------------------------------------------
// Overlaps and distances

Complex overlap(const PureState& psi, const PureState& phi) {
  require_same_modes(psi.modes(), phi.modes());
  const auto& small = psi.support_size() <= phi.support_size() ? psi : phi;
  const auto& large = &small == &psi ? phi : psi;
  Complex sum{};
  for (const auto& [index, amp] : small.terms()) {
    auto it = large.terms().find(index);
    if (it == large.terms().end()) continue;
    sum += &small == &psi ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return sum;
}

double fidelity(const PureState& a, const PureState& b) {
  return std::min(1.0, std::abs(overlap(a, b)));
}

double trace_distance(const PureState& a, const PureState& b) {
  const double f = fidelity(a, b);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double trace_distance(const FockDiagonalState& a, const FockDiagonalState& b) {
  require_same_modes(a.modes(), b.modes());
  double sum = 0.0;
  auto ia = a.weights().begin();
  auto ib = b.weights().begin();
  while (ia != a.weights().end() || ib != b.weights().end()) {
    if (ib == b.weights().end() || (ia != a.weights().end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.weights().end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return std::min(1.0, 0.5 * sum);
}

double fidelity(const FockDiagonalState& a, const FockDiagonalState& b) {
  require_same_modes(a.modes(), b.modes());
  double sum = 0.0;
  for (const auto& [index, p] : a.weights()) sum += std::sqrt(p * b.probability(index));
  return std::min(1.0, sum);
}

}  // namespace osmp
