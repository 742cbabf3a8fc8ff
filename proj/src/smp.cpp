#include "osmp/smp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "osmp/parallel.hpp"

namespace osmp {

// ---------------------------------------------------------------------------
// Function tables

FunctionTable::FunctionTable(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("FunctionTable: empty table");
  if (values_.size() != rows_ * cols_) {
    throw std::invalid_argument("FunctionTable: value count does not match shape");
  }
  for (auto v : values_) {
    if (v > 1) throw std::invalid_argument("FunctionTable: entries must be 0 or 1");
  }
}

FunctionTable FunctionTable::submatrix(const std::vector<std::size_t>& rows,
                                       const std::vector<std::size_t>& cols) const {
  std::vector<std::uint8_t> out;
  out.reserve(rows.size() * cols.size());
  for (auto r : rows) {
    for (auto c : cols) {
      if (r >= rows_ || c >= cols_) throw std::out_of_range("FunctionTable::submatrix");
      out.push_back(values_[r * cols_ + c]);
    }
  }
  return FunctionTable(rows.size(), cols.size(), std::move(out));
}

FunctionTable equality_function(int n) {
  if (n < 1) throw std::invalid_argument("equality_function: n must be >= 1");
  if (n > kMaxTableBits) {
    throw std::invalid_argument("equality_function: table form limited to n <= " +
                                std::to_string(kMaxTableBits));
  }
  const std::size_t side = std::size_t{1} << n;
  std::vector<std::uint8_t> values(side * side, 0);
  for (std::size_t i = 0; i < side; ++i) values[i * side + i] = 1;
  return FunctionTable(side, side, std::move(values));
}

namespace {

class ProtocolTreeSearch {
 public:
  explicit ProtocolTreeSearch(const FunctionTable& table)
      : table_(table), memo_(std::size_t{1} << (table.rows() + table.cols()), -1) {}

  int solve() { return cost((1u << table_.rows()) - 1, (1u << table_.cols()) - 1); }

 private:
  bool monochromatic(unsigned rows, unsigned cols) const {
    int seen = -1;
    for (std::size_t r = 0; r < table_.rows(); ++r) {
      if (!(rows >> r & 1u)) continue;
      for (std::size_t c = 0; c < table_.cols(); ++c) {
        if (!(cols >> c & 1u)) continue;
        const int v = table_(r, c);
        if (seen < 0) seen = v;
        else if (seen != v) return false;
      }
    }
    return true;
  }

  int cost(unsigned rows, unsigned cols) {
    auto& slot = memo_[(static_cast<std::size_t>(rows) << table_.cols()) | cols];
    if (slot >= 0) return slot;
    if (monochromatic(rows, cols)) return slot = 0;
    int best = std::numeric_limits<int>::max();
    // Alice splits her rows, then Bob his columns. Each unordered
    // bipartition is visited once: the part holding the lowest set bit.
    auto try_splits = [&](unsigned mask, bool alice) {
      const unsigned low = mask & (~mask + 1u);
      for (unsigned part = (mask - 1u) & mask; part; part = (part - 1u) & mask) {
        if (!(part & low)) continue;
        const unsigned rest = mask ^ part;
        const int first = alice ? cost(part, cols) : cost(rows, part);
        if (1 + first >= best) continue;
        const int second = alice ? cost(rest, cols) : cost(rows, rest);
        best = std::min(best, 1 + std::max(first, second));
      }
    };
    try_splits(rows, true);
    try_splits(cols, false);
    return slot = best;
  }

  const FunctionTable& table_;
  std::vector<int> memo_;
};

}  // namespace

int bruteforce_deterministic_cc(const FunctionTable& table) {
  if (table.rows() > kMaxOracleSide || table.cols() > kMaxOracleSide) {
    throw std::invalid_argument("bruteforce_deterministic_cc: table larger than 8 x 8");
  }
  return ProtocolTreeSearch(table).solve();
}

// ---------------------------------------------------------------------------
// Codes

namespace {

void check_input_bits(int n) {
  if (n < 1 || n > 63) throw std::invalid_argument("code input length must be in [1, 63]");
}

}  // namespace

int hamming_distance(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

BinaryCode identity_code(int n) {
  check_input_bits(n);
  return BinaryCode{"identity", n, n, 1, [n](std::uint64_t x) {
                      std::vector<std::uint8_t> word(static_cast<std::size_t>(n));
                      for (int i = 0; i < n; ++i) word[static_cast<std::size_t>(i)] = (x >> i) & 1u;
                      return word;
                    }};
}

BinaryCode repetition_code(int n, int factor) {
  check_input_bits(n);
  if (factor < 1) throw std::invalid_argument("repetition_code: factor must be >= 1");
  return BinaryCode{"repetition-" + std::to_string(factor), n, n * factor, factor,
                    [n, factor](std::uint64_t x) {
                      std::vector<std::uint8_t> word;
                      word.reserve(static_cast<std::size_t>(n * factor));
                      for (int i = 0; i < n; ++i) {
                        word.insert(word.end(), static_cast<std::size_t>(factor),
                                    static_cast<std::uint8_t>((x >> i) & 1u));
                      }
                      return word;
                    }};
}

BinaryCode linear_code(const std::vector<std::vector<std::uint8_t>>& generator) {
  const int n = static_cast<int>(generator.size());
  check_input_bits(n);
  if (n > 20) throw std::invalid_argument("linear_code: at most 20 generator rows");
  const std::size_t length = generator.front().size();
  if (length == 0) throw std::invalid_argument("linear_code: empty generator row");
  for (const auto& row : generator) {
    if (row.size() != length) throw std::invalid_argument("linear_code: ragged generator");
    for (auto v : row) {
      if (v > 1) throw std::invalid_argument("linear_code: generator entries must be 0 or 1");
    }
  }
  auto encode = [generator, length](std::uint64_t x) {
    std::vector<std::uint8_t> word(length, 0);
    for (std::size_t i = 0; i < generator.size(); ++i) {
      if (!((x >> i) & 1u)) continue;
      for (std::size_t j = 0; j < length; ++j) word[j] ^= generator[i][j];
    }
    return word;
  };
  // Minimum distance of a linear code is the minimum nonzero codeword weight.
  int dmin = static_cast<int>(length);
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << n); ++x) {
    const auto w = encode(x);
    const int weight = static_cast<int>(std::count(w.begin(), w.end(), 1));
    if (weight == 0) throw std::invalid_argument("linear_code: generator rows are dependent");
    dmin = std::min(dmin, weight);
  }
  return BinaryCode{"linear", n, static_cast<int>(length), dmin, encode};
}

// ---------------------------------------------------------------------------
// Beamsplitter

namespace {

double log_factorial(std::uint64_t k) { return std::lgamma(static_cast<double>(k) + 1.0); }

double log_binomial(std::uint64_t n, std::uint64_t k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

std::uint32_t single_occupation(const FockIndex& index) { return index[0]; }

void require_single_mode(const PureState& s, const char* what) {
  if (s.modes() != 1) throw mode_mismatch(std::string(what) + ": single-mode input required");
}

}  // namespace

double difference_vacuum_amplitude(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t k = std::uint64_t{a} + b;
  return std::exp(0.5 * log_binomial(k, a) - 0.5 * static_cast<double>(k) * std::numbers::ln2);
}

PureState beamsplitter_pair(const PureState& a, const PureState& b) {
  require_single_mode(a, "beamsplitter_pair");
  require_single_mode(b, "beamsplitter_pair");
  if (a.support_size() * b.support_size() > kSupportCap) {
    throw support_cap_exceeded("beamsplitter_pair: input support exceeds cap");
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, Complex> out;
  for (const auto& [ia, xa] : a.terms()) {
    const std::uint32_t na = single_occupation(ia);
    for (const auto& [ib, xb] : b.terms()) {
      const std::uint32_t nb = single_occupation(ib);
      const Complex input = xa * xb;
      const double scale = -0.5 * static_cast<double>(na + nb) * std::numbers::ln2 -
                           0.5 * (log_factorial(na) + log_factorial(nb));
      // (c+d)^na (c-d)^nb expanded; c^i d^(na-i) times c^j (-d)^(nb-j).
      for (std::uint32_t i = 0; i <= na; ++i) {
        for (std::uint32_t j = 0; j <= nb; ++j) {
          const std::uint32_t p = i + j;
          const std::uint32_t q = na + nb - p;
          const double magnitude =
              std::exp(log_binomial(na, i) + log_binomial(nb, j) +
                       0.5 * (log_factorial(p) + log_factorial(q)) + scale);
          const double sign = ((nb - j) % 2 == 0) ? 1.0 : -1.0;
          out[{p, q}] += input * (sign * magnitude);
        }
      }
    }
  }
  PureState::Terms terms;
  for (const auto& [pq, amp] : out) terms.emplace(FockIndex{pq.first, pq.second}, amp);
  if (terms.size() > kSupportCap) throw support_cap_exceeded("beamsplitter_pair: output exceeds cap");
  return PureState(2, std::move(terms));
}

// ---------------------------------------------------------------------------
// Referees

namespace {

double single_mode_accept(const PureState& a, const PureState& b) {
  std::map<std::uint32_t, Complex> by_total;
  for (const auto& [ia, xa] : a.terms()) {
    for (const auto& [ib, xb] : b.terms()) {
      const auto na = single_occupation(ia);
      const auto nb = single_occupation(ib);
      by_total[na + nb] += xa * xb * difference_vacuum_amplitude(na, nb);
    }
  }
  double p = 0.0;
  for (const auto& [k, amp] : by_total) p += std::norm(amp);
  return p;
}

double product_accept(const ProductState& a, const ProductState& b) {
  // Messages in scope reuse a handful of distinct factors; memoise by address.
  std::vector<std::pair<std::array<const PureState*, 2>, double>> cache;
  double p = 1.0;
  for (std::size_t i = 0; i < a.modes(); ++i) {
    const std::array<const PureState*, 2> key{a.factors()[i].get(), b.factors()[i].get()};
    auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& e) { return e.first == key; });
    if (it == cache.end()) {
      cache.emplace_back(key, single_mode_accept(*key[0], *key[1]));
      it = std::prev(cache.end());
    }
    p *= it->second;
  }
  return p;
}

double pure_accept(const PureState& a, const PureState& b) {
  if (a.support_size() * b.support_size() > 50 * kSupportCap) {
    throw support_cap_exceeded("interference referee: joint support too large");
  }
  std::map<FockIndex, Complex> by_sum;
  std::vector<std::uint32_t> sum(a.modes());
  for (const auto& [ia, xa] : a.terms()) {
    for (const auto& [ib, xb] : b.terms()) {
      double amp = 1.0;
      for (std::size_t i = 0; i < a.modes(); ++i) {
        sum[i] = ia[i] + ib[i];
        amp *= difference_vacuum_amplitude(ia[i], ib[i]);
      }
      by_sum[FockIndex(sum)] += xa * xb * amp;
    }
  }
  double p = 0.0;
  for (const auto& [k, amp] : by_sum) p += std::norm(amp);
  return p;
}

PureState as_pure(const Message& m) {
  if (const auto* pure = std::get_if<PureState>(&m)) return *pure;
  if (const auto* prod = std::get_if<ProductState>(&m)) return prod->expand();
  throw incompatible_referee("expected a pure message");
}

double interference_accept(const Message& a, const Message& b) {
  if (const auto* da = std::get_if<FockDiagonalState>(&a)) {
    double p = 0.0;
    for (const auto& [index, w] : da->weights()) {
      p += w * interference_accept(Message(PureState::basis(index)), b);
    }
    return p;
  }
  if (std::holds_alternative<FockDiagonalState>(b)) return interference_accept(b, a);
  const auto* pa = std::get_if<ProductState>(&a);
  const auto* pb = std::get_if<ProductState>(&b);
  if (pa && pb) return product_accept(*pa, *pb);
  return pure_accept(as_pure(a), as_pure(b));
}

std::vector<std::pair<FockIndex, double>> fock_outcomes(const Message& m) {
  std::vector<std::pair<FockIndex, double>> out;
  if (const auto* d = std::get_if<FockDiagonalState>(&m)) {
    for (const auto& [index, p] : d->weights()) out.emplace_back(index, p);
    return out;
  }
  for (const auto& [index, amp] : as_pure(m).terms()) out.emplace_back(index, std::norm(amp));
  return out;
}

double fock_basis_accept(const FockBasisReferee& referee, const Message& a, const Message& b) {
  if (!referee.accept) throw incompatible_referee("Fock-basis referee has no decision rule");
  const auto oa = fock_outcomes(a);
  const auto ob = fock_outcomes(b);
  double p = 0.0;
  for (const auto& [ia, pa] : oa) {
    for (const auto& [ib, pb] : ob) {
      const double accept = referee.accept(ia, ib);
      if (!(accept >= 0.0 && accept <= 1.0)) {
        throw std::domain_error("referee accept probability outside [0,1]");
      }
      p += pa * pb * accept;
    }
  }
  return p;
}

}  // namespace

FockBasisReferee compare_outcomes_referee() {
  return FockBasisReferee{"compare-outcomes", [](const FockIndex& a, const FockIndex& b) {
                            return a == b ? 1.0 : 0.0;
                          }};
}

double output_one_probability(const Referee& referee, const Message& alice, const Message& bob) {
  if (modes(alice) != modes(bob)) throw mode_mismatch("referee: Alice and Bob use different mode counts");
  const double p = std::visit(
      [&](const auto& r) -> double {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, InterferenceReferee>) {
          return interference_accept(alice, bob);
        } else {
          return fock_basis_accept(r, alice, bob);
        }
      },
      referee);
  return std::clamp(p, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Protocols

void validate(const SmpProtocol& protocol) {
  if (protocol.input_bits < 1 || protocol.input_bits > 63) {
    throw std::invalid_argument("protocol input_bits must be in [1, 63]");
  }
  if (protocol.modes == 0) throw std::invalid_argument("protocol mode count must be positive");
  if (!(protocol.mu >= 0.0)) throw std::invalid_argument("protocol mu must be non-negative");
  if (!protocol.alice || !protocol.bob) throw std::invalid_argument("protocol encoders missing");
  if (!protocol.target) throw std::invalid_argument("protocol target function missing");
}

SmpProtocol coherent_fingerprint_protocol(const BinaryCode& code, double mu_total, double max_tail) {
  if (!code.encode || code.length < 1 || code.input_bits < 1) {
    throw std::invalid_argument("coherent_fingerprint_protocol: invalid code");
  }
  if (!(mu_total > 0.0) || !std::isfinite(mu_total)) {
    throw std::invalid_argument("coherent_fingerprint_protocol: mu_total must be positive");
  }
  const auto m = static_cast<std::size_t>(code.length);
  const double alpha = std::sqrt(mu_total / static_cast<double>(m));
  const double per_mode_tail = max_tail / static_cast<double>(m);
  auto plus = coherent_state_with_tail(Complex(alpha, 0.0), per_mode_tail);
  auto minus = coherent_state_with_tail(Complex(-alpha, 0.0), per_mode_tail);
  const double tail = std::max(plus.tail_mass, minus.tail_mass) * static_cast<double>(m);
  std::array<ProductState::Factor, 2> factors{
      std::make_shared<const PureState>(std::move(plus.state)),
      std::make_shared<const PureState>(std::move(minus.state))};

  Encoder encoder = [code, factors, tail](std::uint64_t x) -> Message {
    const auto word = code.encode(x);
    std::vector<ProductState::Factor> modes;
    modes.reserve(word.size());
    for (auto bit : word) modes.push_back(factors[bit]);
    return ProductState(std::move(modes), tail);
  };

  SmpProtocol p;
  p.name = "qfp/" + code.name;
  p.input_bits = code.input_bits;
  p.modes = m;
  p.mu = mu_total;
  p.alice = encoder;
  p.bob = encoder;
  p.referee = InterferenceReferee{};
  p.target = equality;
  p.tail_mass = tail;
  return p;
}

SmpProtocol trivial_classical_protocol(const BinaryCode& code) {
  if (!code.encode || code.length < 1 || code.input_bits < 1) {
    throw std::invalid_argument("trivial_classical_protocol: invalid code");
  }
  auto encode_bits = [code](std::uint64_t x) {
    const auto word = code.encode(x);
    return FockIndex(std::vector<std::uint32_t>(word.begin(), word.end()));
  };
  double mu = static_cast<double>(code.length);
  if (code.input_bits <= 20) {
    std::uint64_t heaviest = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << code.input_bits); ++x) {
      heaviest = std::max(heaviest, total_photons(encode_bits(x)));
    }
    mu = static_cast<double>(heaviest);
  }
  Encoder encoder = [encode_bits](std::uint64_t x) -> Message {
    return FockDiagonalState::point_mass(encode_bits(x));
  };
  SmpProtocol p;
  p.name = "classical-trivial/" + code.name;
  p.input_bits = code.input_bits;
  p.modes = static_cast<std::size_t>(code.length);
  p.mu = mu;
  p.alice = encoder;
  p.bob = encoder;
  p.referee = compare_outcomes_referee();
  p.target = equality;
  return p;
}

SmpProtocol trivial_classical_protocol(int n) { return trivial_classical_protocol(identity_code(n)); }

SmpProtocol with_encoders(const SmpProtocol& protocol, Encoder alice, Encoder bob, std::string name) {
  SmpProtocol out = protocol;
  out.alice = std::move(alice);
  out.bob = std::move(bob);
  out.name = std::move(name);
  return out;
}

// ---------------------------------------------------------------------------
// Error evaluation

namespace {

double error_from_output(bool f, double p_one) { return std::clamp(f ? 1.0 - p_one : p_one, 0.0, 1.0); }

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void set_worst(ErrorReport& report) {
  report.worst_error = -1.0;
  for (const auto& pe : report.per_pair) {
    if (pe.p_error > report.worst_error) {
      report.worst_error = pe.p_error;
      report.worst_x = pe.x;
      report.worst_y = pe.y;
    }
  }
  if (report.per_pair.empty()) report.worst_error = 0.0;
}

}  // namespace

double pair_error(const SmpProtocol& protocol, std::uint64_t x, std::uint64_t y) {
  const double p_one = output_one_probability(protocol.referee, protocol.alice(x), protocol.bob(y));
  return error_from_output(protocol.target(x, y), p_one);
}

ErrorReport evaluate_error(const SmpProtocol& protocol, const std::vector<Message>& alice,
                           const std::vector<Message>& bob, unsigned jobs) {
  validate(protocol);
  const std::size_t inputs = std::size_t{1} << protocol.input_bits;
  if (alice.size() != inputs || bob.size() != inputs) {
    throw std::invalid_argument("evaluate_error: need one message per input");
  }
  ErrorReport report;
  report.per_pair.resize(inputs * inputs);
  parallel_for(inputs, jobs, [&](std::size_t x) {
    for (std::size_t y = 0; y < inputs; ++y) {
      const bool f = protocol.target(x, y);
      const double p_one = output_one_probability(protocol.referee, alice[x], bob[y]);
      report.per_pair[x * inputs + y] = PairError{x, y, f, error_from_output(f, p_one), 0.0};
    }
  });
  set_worst(report);
  return report;
}

ErrorReport evaluate_error(const SmpProtocol& protocol, const EvaluationOptions& options) {
  validate(protocol);
  if (options.mode == EvaluationOptions::Mode::exhaustive) {
    if (protocol.input_bits > kMaxExhaustiveBits) {
      throw std::invalid_argument("exhaustive evaluation requires n <= " +
                                  std::to_string(kMaxExhaustiveBits));
    }
    const std::size_t inputs = std::size_t{1} << protocol.input_bits;
    std::vector<std::optional<Message>> a(inputs), b(inputs);
    parallel_for(inputs, options.jobs, [&](std::size_t x) {
      a[x] = protocol.alice(x);
      b[x] = protocol.bob(x);
    });
    std::vector<Message> alice, bob;
    alice.reserve(inputs);
    bob.reserve(inputs);
    for (std::size_t x = 0; x < inputs; ++x) {
      alice.push_back(std::move(*a[x]));
      bob.push_back(std::move(*b[x]));
    }
    return evaluate_error(protocol, alice, bob, options.jobs);
  }

  if (!options.seed) throw std::invalid_argument("sampled evaluation requires an explicit seed");
  if (options.samples == 0 || options.shots == 0) {
    throw std::invalid_argument("sampled evaluation needs samples > 0 and shots > 0");
  }
  const std::uint64_t seed = *options.seed;
  const std::uint64_t input_mask =
      protocol.input_bits >= 64 ? ~0ull : (std::uint64_t{1} << protocol.input_bits) - 1;
  ErrorReport report;
  report.sampled = true;
  report.seed = seed;
  report.shots = options.shots;
  report.per_pair.resize(options.samples);
  parallel_for(options.samples, options.jobs, [&](std::size_t i) {
    // Pair choice: half the samples test equal inputs.
    std::mt19937_64 pick(splitmix64(seed ^ splitmix64(i)));
    const std::uint64_t x = pick() & input_mask;
    const std::uint64_t y = (pick() & 1u) ? x : (pick() & input_mask);
    const bool f = protocol.target(x, y);
    const double p_one = output_one_probability(protocol.referee, protocol.alice(x), protocol.bob(y));
    // Shots come from a stream fixed by (seed, x, y).
    std::mt19937_64 shots_rng(splitmix64(seed ^ splitmix64(x ^ splitmix64(y + 0x51ed27ull))));
    std::size_t wrong = 0;
    for (std::size_t s = 0; s < options.shots; ++s) {
      const bool output = uniform01(shots_rng) < p_one;
      wrong += output != f;
    }
    const double est = static_cast<double>(wrong) / static_cast<double>(options.shots);
    const double se = std::sqrt(est * (1.0 - est) / static_cast<double>(options.shots));
    report.per_pair[i] = PairError{x, y, f, est, se};
  });
  set_worst(report);
  return report;
}

}  // namespace osmp
