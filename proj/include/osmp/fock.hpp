// Multimode Fock-space states: occupation tuples, sparse pure kets,
// Fock-diagonal mixtures and product states built from single-mode factors.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace osmp {

using Complex = std::complex<double>;

/// Thrown when a state would need more nonzero terms than the support cap.
class support_cap_exceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Thrown when two states live on different numbers of modes.
class mode_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Maximum number of nonzero terms any sparse state may hold.
inline constexpr std::size_t kSupportCap = 1'000'000;
/// Amplitudes (or probabilities) below this magnitude are dropped.
inline constexpr double kPruneThreshold = 1e-15;
/// Normalization tolerance enforced on every constructed state.
inline constexpr double kNormTolerance = 1e-9;

/// Occupation-number tuple |n_1, ..., n_m> labelling one Fock basis vector.
class FockIndex {
 public:
  explicit FockIndex(std::vector<std::uint32_t> occupations);
  FockIndex(std::initializer_list<std::uint32_t> occupations)
      : FockIndex(std::vector<std::uint32_t>(occupations)) {}

  static FockIndex vacuum(std::size_t modes);

  std::size_t modes() const { return occupations_.size(); }
  std::uint32_t operator[](std::size_t i) const { return occupations_[i]; }
  std::span<const std::uint32_t> occupations() const { return occupations_; }

  /// Occupations of *this followed by those of `other`.
  FockIndex concat(const FockIndex& other) const;

  auto operator<=>(const FockIndex&) const = default;
  bool operator==(const FockIndex&) const = default;

 private:
  std::vector<std::uint32_t> occupations_;
};

std::uint64_t total_photons(const FockIndex& index);

std::string to_string(const FockIndex& index);

/// All occupation tuples on `modes` modes with total photon number <= max_total,
/// in lexicographic order.
std::vector<FockIndex> enumerate_fock_indices(std::size_t modes, std::uint64_t max_total);

/// Sparse normalized superposition over Fock basis vectors.
class PureState {
 public:
  using Terms = std::map<FockIndex, Complex>;

  /// Prunes negligible amplitudes and renormalizes. Throws on zero norm,
  /// key length mismatch or support above kSupportCap.
  PureState(std::size_t modes, Terms terms);

  static PureState basis(FockIndex index);
  static PureState vacuum(std::size_t modes);

  std::size_t modes() const { return modes_; }
  const Terms& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  Complex amplitude(const FockIndex& index) const;

 private:
  std::size_t modes_;
  Terms terms_;
};

/// Probability distribution over Fock basis vectors (a "classical" optical message).
class FockDiagonalState {
 public:
  using Weights = std::map<FockIndex, double>;

  /// Rejects negative weights; prunes and renormalizes like PureState.
  FockDiagonalState(std::size_t modes, Weights weights);

  static FockDiagonalState point_mass(FockIndex index);

  std::size_t modes() const { return modes_; }
  const Weights& weights() const { return weights_; }
  std::size_t support_size() const { return weights_.size(); }
  double probability(const FockIndex& index) const;

 private:
  std::size_t modes_;
  Weights weights_;
};

/// Tensor product of single-mode pure factors. Factors are shared and
/// immutable, so copies are cheap and identical factors can be recognised
/// by address.
class ProductState {
 public:
  using Factor = std::shared_ptr<const PureState>;

  /// `tail_mass` records probability discarded before the factors were
  /// renormalized (e.g. a truncated coherent state's Poisson tail).
  explicit ProductState(std::vector<Factor> factors, double tail_mass = 0.0);

  std::size_t modes() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }
  const PureState& factor(std::size_t i) const { return *factors_[i]; }
  double tail_mass() const { return tail_mass_; }

  /// Largest total photon number present in the support.
  std::uint64_t max_total_photons() const;
  /// Size of the support once expanded; saturates at SIZE_MAX.
  std::size_t expanded_support_size() const;
  /// Expands into a sparse multimode ket (throws support_cap_exceeded).
  PureState expand() const;

 private:
  std::vector<Factor> factors_;
  double tail_mass_;
};

/// Any message a party may send.
using Message = std::variant<PureState, ProductState, FockDiagonalState>;

std::size_t modes(const Message& message);

/// Single-mode coherent state cut at a fixed photon number and renormalized.
struct TruncatedCoherent {
  PureState state;
  std::uint32_t cutoff;
  double tail_mass;  // Poisson mass above the cutoff, before renormalization
};

TruncatedCoherent coherent_state(Complex alpha, std::uint32_t cutoff);
/// Smallest cutoff whose discarded Poisson tail is below `max_tail`.
TruncatedCoherent coherent_state_with_tail(Complex alpha, double max_tail);

// Photon-number statistics.
double mean_photon_number(const PureState& state);
double mean_photon_number(const FockDiagonalState& state);
double mean_photon_number(const ProductState& state);
double mean_photon_number(const Message& state);

using PhotonDistribution = std::map<std::uint64_t, double>;

PhotonDistribution photon_number_distribution(const PureState& state);
PhotonDistribution photon_number_distribution(const FockDiagonalState& state);
/// Convolution of the per-mode distributions; never expands the product.
PhotonDistribution photon_number_distribution(const ProductState& state);
PhotonDistribution photon_number_distribution(const Message& state);

/// Pr[N >= a] read off a photon-number distribution.
double probability_at_least(const PhotonDistribution& distribution, std::uint64_t a);

// Composition.
PureState tensor(const PureState& a, const PureState& b);
FockDiagonalState tensor(const FockDiagonalState& a, const FockDiagonalState& b);
ProductState tensor(const ProductState& a, const ProductState& b);

// Overlap and distances between sparse states.
Complex overlap(const PureState& psi, const PureState& phi);

double trace_distance(const PureState& a, const PureState& b);
double trace_distance(const FockDiagonalState& a, const FockDiagonalState& b);

double fidelity(const PureState& a, const PureState& b);
double fidelity(const FockDiagonalState& a, const FockDiagonalState& b);

}  // namespace osmp
