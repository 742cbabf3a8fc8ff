// Replacing every message of an SMP protocol by its projection below the
// Markov cutoff, with the resulting error budget.
#pragma once

#include "osmp/smp.hpp"
#include "osmp/truncation.hpp"

namespace osmp {

/// Error budget after replacing every message by one within trace distance
/// `closeness`: epsilon + 2 * closeness.
double lemma3_error_bound(double epsilon, double closeness);

/// Trace distance between a message and its truncated version.
double truncation_distance(const Message& original, const Message& truncated);

struct TransformResult {
  SmpProtocol protocol;
  TruncationSpec spec;
  double original_error = 0.0;  // epsilon the budget starts from
  double error_bound = 0.0;     // epsilon + 2 sqrt(delta)
  // Measured over every message when n <= kMaxExhaustiveBits, NaN otherwise.
  double min_weight = 0.0;
  double max_trace_distance = 0.0;
};

/// Truncates every message at floor(protocol.mu / delta) photons. Throws
/// premise_violated if a message's mean photon number exceeds protocol.mu,
/// vacuous_truncation if a message has no weight below the cutoff.
TransformResult transform_protocol(const SmpProtocol& protocol, double delta,
                                   double original_error, unsigned jobs = 1);

/// As above, with the original error obtained by exhaustive evaluation.
TransformResult transform_protocol(const SmpProtocol& protocol, double delta, unsigned jobs = 1);

}  // namespace osmp
