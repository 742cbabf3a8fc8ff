// Simultaneous-message-passing protocols over optical messages: encoders,
// referee rules, exact and sampled error evaluation, concrete protocols and
// a brute-force deterministic communication complexity oracle.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "osmp/fock.hpp"

namespace osmp {

/// Thrown when a referee cannot act on the given message representation.
class incompatible_referee : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Function tables

/// Boolean communication matrix. Rows are Alice's inputs, columns Bob's.
class FunctionTable {
 public:
  FunctionTable(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool operator()(std::size_t x, std::size_t y) const { return values_[x * cols_ + y] != 0; }

  /// Restriction to the given rows and columns (in the given order).
  FunctionTable submatrix(const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) const;

  bool operator==(const FunctionTable&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> values_;
};

inline constexpr int kMaxTableBits = 12;

/// Eq_n as a 2^n x 2^n table; n <= kMaxTableBits.
FunctionTable equality_function(int n);

inline bool equality(std::uint64_t x, std::uint64_t y) { return x == y; }

/// Largest side accepted by bruteforce_deterministic_cc.
inline constexpr std::size_t kMaxOracleSide = 8;

/// Minimum worst-case number of bits over deterministic two-party protocols.
/// Protocol-tree convention: leaves are monochromatic rectangles and the
/// final answer is not charged. Tables up to 8 x 8.
int bruteforce_deterministic_cc(const FunctionTable& table);

// ---------------------------------------------------------------------------
// Binary codes

/// Map from n-bit inputs to `length`-bit codewords. Input bit i is (x >> i) & 1.
struct BinaryCode {
  std::string name;
  int input_bits = 0;
  int length = 0;
  int min_distance = 0;
  std::function<std::vector<std::uint8_t>(std::uint64_t)> encode;
};

BinaryCode identity_code(int n);
/// Each input bit repeated `factor` times in a contiguous block.
BinaryCode repetition_code(int n, int factor);
/// Linear code from generator rows (one row per input bit); min distance by enumeration.
BinaryCode linear_code(const std::vector<std::vector<std::uint8_t>>& generator);

int hamming_distance(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

// ---------------------------------------------------------------------------
// Referees

/// Interferes Alice's mode i with Bob's mode i on a balanced beamsplitter and
/// outputs 1 ("equal") iff every difference port is in vacuum.
struct InterferenceReferee {};

/// Measures both messages in the Fock basis and outputs 1 with probability
/// accept(outcome_alice, outcome_bob).
struct FockBasisReferee {
  std::string name;
  std::function<double(const FockIndex&, const FockIndex&)> accept;
};

using Referee = std::variant<InterferenceReferee, FockBasisReferee>;

FockBasisReferee compare_outcomes_referee();

/// Pr[referee outputs 1] for the given pair of messages.
double output_one_probability(const Referee& referee, const Message& alice, const Message& bob);

// ---------------------------------------------------------------------------
// Beamsplitter

/// Balanced beamsplitter on two single-mode inputs:
/// a^dag -> (c^dag + d^dag)/sqrt2, b^dag -> (c^dag - d^dag)/sqrt2.
/// Output modes are (sum port, difference port).
PureState beamsplitter_pair(const PureState& a, const PureState& b);

/// <k, 0| U |a, b> for the beamsplitter above (zero unless k = a + b).
double difference_vacuum_amplitude(std::uint32_t a, std::uint32_t b);

// ---------------------------------------------------------------------------
// Protocols

using Encoder = std::function<Message(std::uint64_t)>;
using Target = std::function<bool(std::uint64_t, std::uint64_t)>;

struct SmpProtocol {
  std::string name;
  int input_bits = 0;
  std::size_t modes = 0;
  double mu = 0.0;  // declared maximum mean photon number per party
  Encoder alice;
  Encoder bob;
  Referee referee;
  Target target;
  double tail_mass = 0.0;  // largest discarded tail of any message, if pre-truncated
};

/// Throws std::invalid_argument if the protocol's fields are inconsistent.
void validate(const SmpProtocol& protocol);

/// Coherent-state fingerprinting: each party sends the product of coherent
/// states with amplitude (-1)^{c_i} sqrt(mu_total/m), truncated per mode so that
/// the per-message discarded tail is below `max_tail`.
SmpProtocol coherent_fingerprint_protocol(const BinaryCode& code, double mu_total,
                                          double max_tail = 1e-10);

/// Point-mass Fock-diagonal messages |c_1 ... c_m> and an outcome-comparing referee.
SmpProtocol trivial_classical_protocol(const BinaryCode& code);
SmpProtocol trivial_classical_protocol(int n);

/// Replaces the encoders, keeping referee and target.
SmpProtocol with_encoders(const SmpProtocol& protocol, Encoder alice, Encoder bob,
                          std::string name);

// ---------------------------------------------------------------------------
// Error evaluation

struct PairError {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  bool f = false;
  double p_error = 0.0;
  double std_error = 0.0;  // zero for exact evaluation
};

struct ErrorReport {
  double worst_error = 0.0;
  std::uint64_t worst_x = 0;
  std::uint64_t worst_y = 0;
  std::vector<PairError> per_pair;  // (x, y) order when exhaustive, draw order when sampled
  bool sampled = false;
  std::uint64_t seed = 0;
  std::size_t shots = 0;
};

struct EvaluationOptions {
  enum class Mode { exhaustive, sampled };
  Mode mode = Mode::exhaustive;
  std::size_t samples = 256;  // sampled mode: number of input pairs
  std::size_t shots = 1000;   // sampled mode: referee runs per pair
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
};

inline constexpr int kMaxExhaustiveBits = 12;

/// Exact error for one pair of inputs.
double pair_error(const SmpProtocol& protocol, std::uint64_t x, std::uint64_t y);

ErrorReport evaluate_error(const SmpProtocol& protocol, const EvaluationOptions& options = {});

/// Exhaustive evaluation with caller-supplied messages indexed by input.
ErrorReport evaluate_error(const SmpProtocol& protocol, const std::vector<Message>& alice,
                           const std::vector<Message>& bob, unsigned jobs = 1);

}  // namespace osmp
