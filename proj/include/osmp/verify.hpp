// Seeded property sweeps over the exact finite statements behind the
// truncation argument. Each suite reports its case count and worst slack;
// a suite passes iff every slack is >= -tolerance.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "osmp/smp.hpp"

namespace osmp {

struct VerifyOptions {
  std::uint64_t seed = 20200601;
  std::size_t samples = 1000;  // random cases per randomized suite
  std::uint64_t max = 50;      // lemma4 sweep bound
  unsigned jobs = 1;
  // Test mode: demands slack >= 1, so every suite with a case fails.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  double min_slack = 0.0;
  bool passed = true;
  std::string counterexample;  // first violating case, empty on success
};

/// fock, markov, gentle, closeness, lemma3, lemma4, eq67, entropy, rank, dcc.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(std::string_view name, const VerifyOptions& options);

std::vector<SuiteResult> run_all_suites(const VerifyOptions& options);

/// Fixed-width text summary; one line per suite plus an overall verdict.
std::string format_summary(const std::vector<SuiteResult>& results);

/// One-bit single-mode toy: x -> (|0> + (-1)^x |1>)/sqrt2 on both sides,
/// interference referee, Equality target.
SmpProtocol toy_interference_protocol();

}  // namespace osmp
