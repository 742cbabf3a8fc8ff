// Photon-number cutoff from the Markov inequality, and projection of states
// onto the subspace with at most `cutoff` photons in total.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "osmp/dense.hpp"
#include "osmp/fock.hpp"

namespace osmp {

/// Thrown when a state has no weight below the cutoff.
class vacuous_truncation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a bound is requested for a state that does not meet its premise.
class premise_violated : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kDefaultDelta = 1e-4;

/// Cutoff parameters. The retained subspace is {total photons <= cutoff},
/// with cutoff = floor(mu / delta); this contains {N < mu/delta}.
struct TruncationSpec {
  double mu = 0.0;
  double delta = kDefaultDelta;
  std::uint64_t cutoff = 0;
  std::size_t modes = 1;
};

/// floor(mu/delta). Quotients within 1e-12 (relative) of an integer are
/// snapped to it so that decimal inputs such as 0.3/0.1 give 3.
std::uint64_t floor_ratio(double mu, double delta);

/// Throws std::invalid_argument unless 0 < delta < 1 and mu >= 0.
TruncationSpec markov_cutoff(double mu, double delta, std::size_t modes = 1);

template <typename State>
struct Truncated {
  State state;
  double weight;  // tr(P rho) before renormalization
};

Truncated<PureState> project_below_cutoff(const PureState& state, const TruncationSpec& spec);
Truncated<FockDiagonalState> project_below_cutoff(const FockDiagonalState& state,
                                                  const TruncationSpec& spec);
/// Returns the product unchanged when its whole support already sits below the
/// cutoff; otherwise expands it (subject to the support cap) and projects.
Truncated<Message> project_below_cutoff(const ProductState& state, const TruncationSpec& spec);
Truncated<Message> project_below_cutoff(const Message& state, const TruncationSpec& spec);
Truncated<DenseOperator> project_below_cutoff(const DenseOperator& rho, std::uint64_t cutoff);

/// F(rho, P rho P / tr(P rho)) - sqrt(tr(P rho)); non-negative up to round-off.
double check_gentle_measurement(const DenseOperator& rho, std::uint64_t cutoff);
double check_gentle_measurement(const PureState& psi, std::uint64_t cutoff);

/// sqrt(delta) - trace_distance(rho, truncated rho); throws premise_violated
/// if tr(P rho) < 1 - delta.
double check_projector_closeness(const DenseOperator& rho, std::uint64_t cutoff, double delta);
double check_projector_closeness(const PureState& psi, std::uint64_t cutoff, double delta);
double check_projector_closeness(const PureState& psi, const TruncationSpec& spec);

}  // namespace osmp
