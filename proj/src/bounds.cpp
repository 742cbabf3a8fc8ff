#include "osmp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "osmp/combinatorics.hpp"
#include "osmp/io.hpp"
#include "osmp/truncation.hpp"

namespace osmp {

namespace {

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
}

}  // namespace

TradeoffTerms quantum_tradeoff_lhs(std::size_t m, double mu, double delta) {
  if (m < 2) throw std::invalid_argument("quantum_tradeoff_lhs: m must be >= 2");
  if (!(mu >= 0.0)) throw std::invalid_argument("quantum_tradeoff_lhs: mu must be >= 0");
  require_delta(delta);
  const auto modes = static_cast<double>(m);
  const double photon = mu * std::log2(modes);
  const double mode = modes * std::log2(1.0 + mu / delta);
  return TradeoffTerms{photon, mode, std::min(photon, mode)};
}

double classical_tradeoff_lhs(std::size_t m, double mu, double delta) {
  const auto spec = markov_cutoff(mu, delta, m);
  return count_rank(m, spec.cutoff).log2_rank;
}

std::string to_string(ComplexityKind kind) {
  switch (kind) {
    case ComplexityKind::deterministic: return "D";
    case ComplexityKind::randomized_smp: return "R||";
    case ComplexityKind::quantum_smp: return "Q||";
  }
  return "?";
}

std::vector<ComplexityReference> equality_references(int n) {
  if (n < 1) throw std::invalid_argument("equality_references: n must be >= 1");
  std::vector<ComplexityReference> refs;
  ComplexityReference d{"Eq", n, ComplexityKind::deterministic, std::nullopt, "Theta(n)",
                        "deterministic two-party complexity of Equality"};
  if (n <= 3) d.exact = bruteforce_deterministic_cc(equality_function(n));
  refs.push_back(std::move(d));
  refs.push_back({"Eq", n, ComplexityKind::randomized_smp, std::nullopt, "Omega(sqrt(D))",
                  "Babai-Kimmel SMP lower bound"});
  refs.push_back({"Eq", n, ComplexityKind::quantum_smp, std::nullopt, "Omega(log(R||))",
                  "quantum vs classical SMP lower bound"});
  return refs;
}

TradeoffReport build_report(const ProtocolParams& params,
                            const std::vector<ComplexityReference>& references) {
  TradeoffReport r;
  r.params = params;
  const auto spec = markov_cutoff(params.mu, params.delta, params.m);
  r.cutoff = spec.cutoff;
  r.log2_rank = count_rank(params.m, spec.cutoff).log2_rank;
  r.quantum = quantum_tradeoff_lhs(params.m, params.mu, params.delta);
  r.classical_lhs = r.log2_rank;
  r.entropy_bound = entropy_bound(spec.cutoff, params.m).bound;
  r.references = references;

  std::ostringstream notes;
  notes << "log2;mu=per-party-max";
  if (!params.source.empty()) notes << ";src=" << params.source;
  if (params.n && *params.n >= 2) {
    notes << ";log2m/log2n=" << format_double(std::log2(static_cast<double>(params.m)) /
                                              std::log2(static_cast<double>(*params.n)));
  }
  for (const auto& ref : references) {
    if (ref.kind == ComplexityKind::deterministic && ref.exact) {
      r.d_exact = ref.exact;
      notes << ";D:leaves-monochromatic-answer-free";
    } else {
      notes << ';' << to_string(ref.kind) << '=' << ref.asymptotic;
    }
  }
  r.notes = notes.str();
  return r;
}

TradeoffReport build_report(const ProtocolParams& params,
                            const std::vector<ComplexityReference>& references,
                            const SmpProtocol& protocol) {
  if (protocol.modes != params.m) {
    throw std::invalid_argument("build_report: protocol uses " + std::to_string(protocol.modes) +
                                " modes but parameters say " + std::to_string(params.m));
  }
  if (params.n && *params.n != protocol.input_bits) {
    throw std::invalid_argument("build_report: protocol input length differs from n");
  }
  if (std::abs(protocol.mu - params.mu) > 1e-12 * std::max(1.0, params.mu)) {
    throw std::invalid_argument("build_report: protocol mu differs from parameters");
  }
  return build_report(params, references);
}

std::vector<std::pair<ProtocolParams, SmpProtocol>> qfp_family(const std::vector<int>& ns,
                                                              double mu_total, int factor,
                                                              double delta) {
  std::vector<std::pair<ProtocolParams, SmpProtocol>> out;
  for (int n : ns) {
    auto protocol = coherent_fingerprint_protocol(repetition_code(n, factor), mu_total);
    ProtocolParams p;
    p.n = n;
    p.m = protocol.modes;
    p.mu = protocol.mu;
    p.delta = delta;
    p.source = protocol.name;
    out.emplace_back(std::move(p), std::move(protocol));
  }
  return out;
}

std::string report_csv_header() {
  return "n,m,mu,delta,a,log2_rank,term_photon,term_mode,lhs_min,classical_lhs,entropy_bound,"
         "D_exact,notes";
}

std::string report_csv_row(const TradeoffReport& r) {
  std::ostringstream row;
  row << (r.params.n ? std::to_string(*r.params.n) : std::string()) << ',' << r.params.m << ','
      << format_double(r.params.mu) << ',' << format_double(r.params.delta) << ',' << r.cutoff
      << ',' << format_double(r.log2_rank) << ',' << format_double(r.quantum.term_photon) << ','
      << format_double(r.quantum.term_mode) << ',' << format_double(r.quantum.lhs_min) << ','
      << format_double(r.classical_lhs) << ',' << format_double(r.entropy_bound) << ','
      << (r.d_exact ? std::to_string(*r.d_exact) : std::string()) << ',' << r.notes;
  return row.str();
}

void sort_reports(std::vector<TradeoffReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.params.n.value_or(-1), a.params.m, a.params.mu, a.params.delta) <
           std::tuple(b.params.n.value_or(-1), b.params.m, b.params.mu, b.params.delta);
  });
}

}  // namespace osmp
