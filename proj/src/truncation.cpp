#include "osmp/truncation.hpp"

#include <cmath>
#include <string>

namespace osmp {

namespace {

[[noreturn]] void throw_vacuous(std::uint64_t cutoff) {
  throw vacuous_truncation("state has zero weight on total photons <= " + std::to_string(cutoff));
}

void require_premise(double weight, double delta) {
  if (weight < 1.0 - delta) {
    throw premise_violated("retained weight " + std::to_string(weight) + " is below 1 - delta = " +
                           std::to_string(1.0 - delta));
  }
}

}  // namespace

std::uint64_t floor_ratio(double mu, double delta) {
  const double ratio = mu / delta;
  if (!std::isfinite(ratio) || ratio >= 9.0e15) {
    throw std::invalid_argument("mu/delta is too large for an exact cutoff");
  }
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, nearest)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::floor(ratio));
}

TruncationSpec markov_cutoff(double mu, double delta, std::size_t modes) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1), got " + std::to_string(delta));
  }
  if (!(mu >= 0.0)) throw std::invalid_argument("mu must be non-negative");
  if (modes == 0) throw std::invalid_argument("mode count must be positive");
  return TruncationSpec{mu, delta, floor_ratio(mu, delta), modes};
}

Truncated<PureState> project_below_cutoff(const PureState& state, const TruncationSpec& spec) {
  if (state.modes() != spec.modes) throw mode_mismatch("project_below_cutoff: mode count differs");
  PureState::Terms kept;
  double weight = 0.0;
  for (const auto& [index, amp] : state.terms()) {
    if (total_photons(index) <= spec.cutoff) {
      kept.emplace(index, amp);
      weight += std::norm(amp);
    }
  }
  if (kept.empty()) throw_vacuous(spec.cutoff);
  return {PureState(state.modes(), std::move(kept)), weight};
}

Truncated<FockDiagonalState> project_below_cutoff(const FockDiagonalState& state,
                                                  const TruncationSpec& spec) {
  if (state.modes() != spec.modes) throw mode_mismatch("project_below_cutoff: mode count differs");
  FockDiagonalState::Weights kept;
  double weight = 0.0;
  for (const auto& [index, p] : state.weights()) {
    if (total_photons(index) <= spec.cutoff) {
      kept.emplace(index, p);
      weight += p;
    }
  }
  if (kept.empty()) throw_vacuous(spec.cutoff);
  return {FockDiagonalState(state.modes(), std::move(kept)), weight};
}

Truncated<Message> project_below_cutoff(const ProductState& state, const TruncationSpec& spec) {
  if (state.modes() != spec.modes) throw mode_mismatch("project_below_cutoff: mode count differs");
  if (state.max_total_photons() <= spec.cutoff) return {Message(state), 1.0};
  auto [projected, weight] = project_below_cutoff(state.expand(), spec);
  return {Message(std::move(projected)), weight};
}

Truncated<Message> project_below_cutoff(const Message& state, const TruncationSpec& spec) {
  return std::visit(
      [&](const auto& s) -> Truncated<Message> {
        auto [projected, weight] = project_below_cutoff(s, spec);
        return {Message(std::move(projected)), weight};
      },
      state);
}

Truncated<DenseOperator> project_below_cutoff(const DenseOperator& rho, std::uint64_t cutoff) {
  const Eigen::VectorXd mask = cutoff_mask(rho.basis, cutoff);
  const double weight = rho.matrix.diagonal().real().dot(mask);
  if (!(weight > 0.0)) throw_vacuous(cutoff);
  const Eigen::VectorXcd p = mask.cast<std::complex<double>>();
  DenseMatrix<double> projected = p.asDiagonal() * rho.matrix * p.asDiagonal();
  projected /= std::complex<double>(weight);
  return {DenseOperator(rho.basis, std::move(projected)), weight};
}

double check_gentle_measurement(const DenseOperator& rho, std::uint64_t cutoff) {
  const auto [projected, weight] = project_below_cutoff(rho, cutoff);
  return fidelity(rho, projected) - std::sqrt(weight);
}

double check_gentle_measurement(const PureState& psi, std::uint64_t cutoff) {
  TruncationSpec spec;
  spec.cutoff = cutoff;
  spec.modes = psi.modes();
  const auto [projected, weight] = project_below_cutoff(psi, spec);
  return fidelity(psi, projected) - std::sqrt(weight);
}

double check_projector_closeness(const DenseOperator& rho, std::uint64_t cutoff, double delta) {
  const auto [projected, weight] = project_below_cutoff(rho, cutoff);
  require_premise(weight, delta);
  return std::sqrt(delta) - trace_distance(rho, projected);
}

double check_projector_closeness(const PureState& psi, std::uint64_t cutoff, double delta) {
  TruncationSpec spec;
  spec.cutoff = cutoff;
  spec.modes = psi.modes();
  spec.delta = delta;
  const auto [projected, weight] = project_below_cutoff(psi, spec);
  require_premise(weight, delta);
  return std::sqrt(delta) - trace_distance(psi, projected);
}

double check_projector_closeness(const PureState& psi, const TruncationSpec& spec) {
  return check_projector_closeness(psi, spec.cutoff, spec.delta);
}

}  // namespace osmp
