// Energy/time tradeoff quantities for optical SMP protocols and the
// reference complexities they are compared against. Logarithms are base 2.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "osmp/smp.hpp"

namespace osmp {

struct TradeoffTerms {
  double term_photon;  // mu log2 m
  double term_mode;    // m log2(1 + mu/delta)
  double lhs_min;
};

/// Requires m >= 2, mu >= 0, 0 < delta < 1.
TradeoffTerms quantum_tradeoff_lhs(std::size_t m, double mu, double delta);

/// log2 C(a+m, m) with a = floor(mu/delta).
double classical_tradeoff_lhs(std::size_t m, double mu, double delta);

enum class ComplexityKind { deterministic, randomized_smp, quantum_smp };

std::string to_string(ComplexityKind kind);

/// A reference complexity. `exact` is only ever filled from the brute-force
/// oracle; asymptotic classes stay symbolic.
struct ComplexityReference {
  std::string function;
  int n = 0;
  ComplexityKind kind = ComplexityKind::deterministic;
  std::optional<int> exact;
  std::string asymptotic;
  std::string source;
};

/// D, R|| and Q|| references for Eq_n; D is exact for n <= 3.
std::vector<ComplexityReference> equality_references(int n);

struct ProtocolParams {
  std::optional<int> n;
  std::size_t m = 2;
  double mu = 0.0;
  double delta = 1e-4;
  std::string source;  // free-form provenance, e.g. "grid" or a protocol name
};

struct TradeoffReport {
  ProtocolParams params;
  std::uint64_t cutoff = 0;
  double log2_rank = 0.0;
  TradeoffTerms quantum{};
  double classical_lhs = 0.0;
  double entropy_bound = 0.0;
  std::optional<int> d_exact;
  std::vector<ComplexityReference> references;
  std::string notes;
};

TradeoffReport build_report(const ProtocolParams& params,
                            const std::vector<ComplexityReference>& references);

/// Same, after checking that `protocol` matches the parameters (n, m, mu).
TradeoffReport build_report(const ProtocolParams& params,
                            const std::vector<ComplexityReference>& references,
                            const SmpProtocol& protocol);

/// Parameters read off coherent-fingerprinting instances with a repetition code.
std::vector<std::pair<ProtocolParams, SmpProtocol>> qfp_family(const std::vector<int>& ns,
                                                              double mu_total, int factor,
                                                              double delta);

/// Fixed CSV schema for tradeoff reports.
std::string report_csv_header();
std::string report_csv_row(const TradeoffReport& report);

/// Orders rows by (n, m, mu, delta); absent n sorts first.
void sort_reports(std::vector<TradeoffReport>& reports);

}  // namespace osmp
