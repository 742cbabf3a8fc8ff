#include "osmp/transform.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <optional>

#include "osmp/parallel.hpp"

namespace osmp {

namespace {

constexpr double kMeanTolerance = 1e-9;

void require_mean_within(const Message& m, double mu, const char* who, std::uint64_t input) {
  const double mean = mean_photon_number(m);
  if (mean > mu + kMeanTolerance) {
    throw premise_violated(std::string(who) + " message for input " + std::to_string(input) +
                           " has mean photon number " + std::to_string(mean) +
                           " above mu = " + std::to_string(mu));
  }
}

struct TruncatedSide {
  std::vector<Message> messages;
  std::vector<double> weights;
  std::vector<double> distances;
};

TruncatedSide truncate_all(const Encoder& encoder, std::size_t inputs, const TruncationSpec& spec,
                           double mu, const char* who, unsigned jobs) {
  std::vector<std::optional<Message>> out(inputs);
  TruncatedSide side;
  side.weights.resize(inputs);
  side.distances.resize(inputs);
  parallel_for(inputs, jobs, [&](std::size_t x) {
    const Message original = encoder(x);
    require_mean_within(original, mu, who, x);
    auto [projected, weight] = project_below_cutoff(original, spec);
    side.weights[x] = weight;
    side.distances[x] = truncation_distance(original, projected);
    out[x] = std::move(projected);
  });
  side.messages.reserve(inputs);
  for (auto& m : out) side.messages.push_back(std::move(*m));
  return side;
}

}  // namespace

double lemma3_error_bound(double epsilon, double closeness) { return epsilon + 2.0 * closeness; }

double truncation_distance(const Message& original, const Message& truncated) {
  if (const auto* d = std::get_if<FockDiagonalState>(&original)) {
    return trace_distance(*d, std::get<FockDiagonalState>(truncated));
  }
  if (const auto* p = std::get_if<ProductState>(&original)) {
    if (const auto* q = std::get_if<ProductState>(&truncated)) {
      if (p->factors() == q->factors()) return 0.0;
      return trace_distance(p->expand(), q->expand());
    }
    return trace_distance(p->expand(), std::get<PureState>(truncated));
  }
  return trace_distance(std::get<PureState>(original), std::get<PureState>(truncated));
}

TransformResult transform_protocol(const SmpProtocol& protocol, double delta,
                                   double original_error, unsigned jobs) {
  validate(protocol);
  const TruncationSpec spec = markov_cutoff(protocol.mu, delta, protocol.modes);

  TransformResult result;
  result.spec = spec;
  result.original_error = original_error;
  result.error_bound = lemma3_error_bound(original_error, std::sqrt(delta));

  const std::string name = protocol.name + "/truncated@" + std::to_string(spec.cutoff);
  if (protocol.input_bits <= kMaxExhaustiveBits) {
    const std::size_t inputs = std::size_t{1} << protocol.input_bits;
    auto alice = std::make_shared<TruncatedSide>(
        truncate_all(protocol.alice, inputs, spec, protocol.mu, "Alice", jobs));
    auto bob = std::make_shared<TruncatedSide>(
        truncate_all(protocol.bob, inputs, spec, protocol.mu, "Bob", jobs));
    result.min_weight = std::numeric_limits<double>::infinity();
    result.max_trace_distance = 0.0;
    for (const auto* side : {alice.get(), bob.get()}) {
      for (std::size_t x = 0; x < inputs; ++x) {
        result.min_weight = std::min(result.min_weight, side->weights[x]);
        result.max_trace_distance = std::max(result.max_trace_distance, side->distances[x]);
      }
    }
    result.protocol = with_encoders(
        protocol, [alice](std::uint64_t x) { return alice->messages.at(x); },
        [bob](std::uint64_t y) { return bob->messages.at(y); }, name);
    return result;
  }

  // Implicit protocols: truncate lazily per input.
  auto lazy = [spec, mu = protocol.mu](Encoder encoder, const char* who) -> Encoder {
    return [spec, mu, encoder = std::move(encoder), who](std::uint64_t x) {
      const Message original = encoder(x);
      require_mean_within(original, mu, who, x);
      return project_below_cutoff(original, spec).state;
    };
  };
  result.min_weight = std::numeric_limits<double>::quiet_NaN();
  result.max_trace_distance = std::numeric_limits<double>::quiet_NaN();
  result.protocol =
      with_encoders(protocol, lazy(protocol.alice, "Alice"), lazy(protocol.bob, "Bob"), name);
  return result;
}

TransformResult transform_protocol(const SmpProtocol& protocol, double delta, unsigned jobs) {
  EvaluationOptions options;
  options.jobs = jobs;
  const double epsilon = evaluate_error(protocol, options).worst_error;
  return transform_protocol(protocol, delta, epsilon, jobs);
}

}  // namespace osmp
