#include "osmp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "osmp/bounds.hpp"
#include "osmp/combinatorics.hpp"
#include "osmp/dense.hpp"
#include "osmp/ensembles.hpp"
#include "osmp/io.hpp"
#include "osmp/parallel.hpp"
#include "osmp/transform.hpp"
#include "osmp/truncation.hpp"

namespace osmp {

namespace {

constexpr double kTolerance = 1e-9;
constexpr double kMarkovTolerance = 1e-12;
constexpr std::size_t kDenseEnsembleDim = 32;

class Tracker {
 public:
  Tracker(std::string name, double tolerance, bool inject_fault)
      : threshold_(inject_fault ? 1.0 : -tolerance) {
    result_.name = std::move(name);
    result_.min_slack = std::numeric_limits<double>::infinity();
  }

  void record(double slack, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (std::isnan(slack)) slack = -std::numeric_limits<double>::infinity();
    result_.min_slack = std::min(result_.min_slack, slack);
    if (slack < threshold_ && result_.passed) {
      result_.passed = false;
      result_.counterexample = describe() + " slack=" + format_double(slack);
    }
  }

  void fail(const std::string& why) {
    if (result_.passed) result_.counterexample = why;
    result_.passed = false;
  }

  SuiteResult finish() && {
    if (result_.cases == 0) result_.min_slack = std::numeric_limits<double>::quiet_NaN();
    return std::move(result_);
  }

 private:
  double threshold_;
  SuiteResult result_;
};

Rng suite_rng(std::uint64_t seed, std::string_view suite) {
  // Each suite gets its own stream so running one alone reproduces the full run.
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (char c : suite) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return Rng(h);
}

std::uint64_t max_photons(const std::vector<FockIndex>& basis) {
  std::uint64_t top = 0;
  for (const auto& b : basis) top = std::max(top, total_photons(b));
  return top;
}

// ---------------------------------------------------------------------------
// Dense ensemble shared by the gentle and closeness suites: a random
// Ginibre operator whose above-cutoff block is damped by a random factor,
// so retained weights spread over (0, 1].

struct DenseCase {
  DenseOperator rho;
  std::uint64_t cutoff;
};

std::vector<DenseCase> dense_ensemble(Rng& rng, std::size_t count) {
  std::vector<DenseCase> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto basis = random_fock_basis(rng, kDenseEnsembleDim);
    const std::uint64_t top = max_photons(basis);
    const std::uint64_t cutoff = uniform_int(rng, 0, top);
    const std::size_t rank = uniform_int(rng, 1, basis.size());
    DenseOperator rho = random_density_operator(rng, basis, rank);
    const double damp = uniform01(rng);
    Eigen::VectorXd d = cutoff_mask(rho.basis, cutoff);
    for (Eigen::Index k = 0; k < d.size(); ++k) d(k) = d(k) > 0.5 ? 1.0 : damp;
    DenseMatrix<double> m = d.asDiagonal() * rho.matrix * d.asDiagonal();
    m /= m.trace().real();
    out.push_back({DenseOperator(std::move(rho.basis), hermitian_part(m)), cutoff});
  }
  return out;
}

std::string describe_dense(const DenseCase& c) {
  std::ostringstream s;
  s << "dim=" << c.rho.dim() << " modes=" << c.rho.modes() << " cutoff=" << c.cutoff;
  return s.str();
}

// ---------------------------------------------------------------------------

SuiteResult suite_fock(const VerifyOptions& opt) {
  Tracker t("fock", kTolerance, opt.inject_fault);
  Rng rng = suite_rng(opt.seed, "fock");
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const std::size_t modes = uniform_int(rng, 1, 3);
    const std::uint64_t top = 6;
    const auto basis = enumerate_fock_indices(modes, top);
    const auto label = [&](const char* what) {
      return [=] { return std::string(what) + " case=" + std::to_string(i) + " modes=" + std::to_string(modes); };
    };

    const PureState a = random_pure_state(rng, modes, top, 8);
    const PureState b = random_pure_state(rng, modes, top, 8);
    const DenseOperator da = to_dense(a, basis);
    const DenseOperator db = to_dense(b, basis);
    const double f = fidelity(da, db);
    const double d = trace_distance(da, db);
    // Fuchs-van de Graaf on the dense pair.
    t.record(d - (1.0 - f), label("fvdg-lower"));
    t.record(std::sqrt(std::max(0.0, 1.0 - f * f)) - d, label("fvdg-upper"));
    t.record(-std::abs(trace_distance(a, b) - d), label("pure-distance-vs-dense"));
    t.record(-std::abs(fidelity(a, b) - f), label("pure-fidelity-vs-dense"));

    const FockDiagonalState p = random_diagonal_state(rng, modes, top, 8);
    const FockDiagonalState q = random_diagonal_state(rng, modes, top, 8);
    const DenseOperator dp = to_dense(p, basis);
    const DenseOperator dq = to_dense(q, basis);
    t.record(-std::abs(trace_distance(p, q) - trace_distance(dp, dq)), label("diag-distance-vs-dense"));
    t.record(-std::abs(fidelity(p, q) - fidelity(dp, dq)), label("diag-fidelity-vs-dense"));

    // Triangle inequality on a third state.
    const PureState c = random_pure_state(rng, modes, top, 8);
    t.record(trace_distance(a, c) + trace_distance(c, b) - trace_distance(a, b), label("triangle"));

    // Mean photon number is additive under tensor products.
    const double joint = mean_photon_number(tensor(a, b));
    t.record(-std::abs(joint - mean_photon_number(a) - mean_photon_number(b)), label("tensor-mean"));
  }
  return std::move(t).finish();
}

SuiteResult suite_markov(const VerifyOptions& opt) {
  Tracker t("markov", kMarkovTolerance, opt.inject_fault);
  Rng rng = suite_rng(opt.seed, "markov");
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const std::size_t modes = uniform_int(rng, 1, 3);
    const std::uint64_t top = uniform_int(rng, 1, 12);
    const bool pure = (i % 2) == 0;
    const Message state = pure ? Message(random_pure_state(rng, modes, top, 12))
                               : Message(random_diagonal_state(rng, modes, top, 12));
    const double mean = mean_photon_number(state);
    const auto dist = photon_number_distribution(state);
    for (std::uint64_t a = 1; a <= top + 2; ++a) {
      const double tail = probability_at_least(dist, a);
      t.record(mean / static_cast<double>(a) - tail, [&] {
        return std::string(pure ? "pure" : "diagonal") + " case=" + std::to_string(i) +
               " a=" + std::to_string(a) + " mean=" + format_double(mean);
      });
    }
  }
  return std::move(t).finish();
}

SuiteResult suite_gentle(const VerifyOptions& opt) {
  Tracker t("gentle", kTolerance, opt.inject_fault);
  Rng rng = suite_rng(opt.seed, "gentle");
  const auto cases = dense_ensemble(rng, opt.samples);
  std::vector<double> slack(cases.size());
  parallel_for(cases.size(), opt.jobs, [&](std::size_t i) {
    slack[i] = check_gentle_measurement(cases[i].rho, cases[i].cutoff);
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    t.record(slack[i], [&] { return "mixed " + describe_dense(cases[i]); });
  }

  // Pure states: F = sqrt(weight) exactly.
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const std::size_t modes = uniform_int(rng, 1, 3);
    const PureState psi = random_pure_state(rng, modes, 10, 12);
    // A cutoff at the photon count of some support element keeps the weight positive.
    auto it = psi.terms().begin();
    std::advance(it, static_cast<long>(uniform_int(rng, 0, psi.support_size() - 1)));
    const std::uint64_t cutoff = total_photons(it->first);
    const double gap = check_gentle_measurement(psi, cutoff);
    t.record(-std::abs(gap), [&] {
      return "pure case=" + std::to_string(i) + " cutoff=" + std::to_string(cutoff);
    });
  }
  return std::move(t).finish();
}

SuiteResult suite_closeness(const VerifyOptions& opt) {
  Tracker t("closeness", kTolerance, opt.inject_fault);
  // Same ensemble as the gentle suite.
  Rng rng = suite_rng(opt.seed, "gentle");
  const auto cases = dense_ensemble(rng, opt.samples);
  const double deltas[] = {0.3, 0.1, 0.02};
  std::vector<std::array<double, 3>> slack(cases.size());
  parallel_for(cases.size(), opt.jobs, [&](std::size_t i) {
    const double w = retained_weight(cases[i].rho, cases[i].cutoff);
    for (std::size_t k = 0; k < 3; ++k) {
      slack[i][k] = w >= 1.0 - deltas[k]
                        ? check_projector_closeness(cases[i].rho, cases[i].cutoff, deltas[k])
                        : std::numeric_limits<double>::infinity();
    }
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (std::isinf(slack[i][k])) continue;  // premise not met
      t.record(slack[i][k], [&] {
        return describe_dense(cases[i]) + " delta=" + format_double(deltas[k]);
      });
    }
  }
  return std::move(t).finish();
}

SuiteResult suite_lemma3(const VerifyOptions& opt) {
  Tracker t("lemma3", kTolerance, opt.inject_fault);
  Rng rng = suite_rng(opt.seed, "lemma3");

  const SmpProtocol toy = toy_interference_protocol();
  const ErrorReport base = evaluate_error(toy);
  const std::vector<FockIndex> extra{FockIndex::vacuum(1), FockIndex{2}, FockIndex{3}};
  const std::size_t trials = std::max<std::size_t>(1, opt.samples / 10);
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<Message> alice;
    std::vector<Message> bob;
    double worst_t = 0.0;
    for (std::uint64_t x = 0; x < 2; ++x) {
      for (auto* side : {&alice, &bob}) {
        const double tx = 0.5 * uniform01(rng);
        worst_t = std::max(worst_t, tx);
        const auto& encoder = side == &alice ? toy.alice : toy.bob;
        side->push_back(perturb(rng, std::get<PureState>(encoder(x)), tx, extra));
      }
    }
    const ErrorReport perturbed = evaluate_error(toy, alice, bob);
    t.record(lemma3_error_bound(base.worst_error, worst_t) - perturbed.worst_error, [&] {
      return "toy trial=" + std::to_string(i) + " t=" + format_double(worst_t);
    });
    for (std::size_t k = 0; k < perturbed.per_pair.size(); ++k) {
      t.record(base.per_pair[k].p_error + 2.0 * worst_t - perturbed.per_pair[k].p_error, [&] {
        return "toy trial=" + std::to_string(i) + " pair=" + std::to_string(k);
      });
    }
  }

  // A fingerprinting instance where the cutoff actually removes weight.
  try {
    const double delta = 0.3;
    const SmpProtocol qfp = coherent_fingerprint_protocol(repetition_code(2, 2), 2.0);
    const double before = evaluate_error(qfp).worst_error;
    const TransformResult tr = transform_protocol(qfp, delta, before, opt.jobs);
    const double after = evaluate_error(tr.protocol).worst_error;
    const auto what = [] { return std::string("qfp n=2 m=4 mu=2 delta=0.3"); };
    t.record(tr.error_bound - after, what);
    t.record(lemma3_error_bound(before, tr.max_trace_distance) - after, what);
    t.record(std::sqrt(delta) - tr.max_trace_distance, what);
  } catch (const std::exception& e) {
    t.fail(std::string("qfp transform threw: ") + e.what());
  }
  return std::move(t).finish();
}

SuiteResult suite_lemma4(const VerifyOptions& opt) {
  Tracker t("lemma4", kTolerance, opt.inject_fault);
  for (std::uint64_t n = 1; n <= opt.max; ++n) {
    for (std::uint64_t m = 1; m <= opt.max; ++m) {
      const auto b = lemma4_bound(n, m);
      const auto describe = [&] {
        return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " lhs=" + b.lhs.str() +
               " rhs=" + b.rhs.str();
      };
      if (b.lhs > b.rhs) {
        t.record(-std::numeric_limits<double>::infinity(), describe);
        continue;
      }
      t.record(log2_big(b.rhs) - log2_big(b.lhs), describe);
    }
  }
  return std::move(t).finish();
}

SuiteResult suite_eq67(const VerifyOptions& opt) {
  Tracker t("eq67", kTolerance, opt.inject_fault);
  const double mus[] = {0.5, 1.0, 2.0, 4.0, 8.0};
  const double deltas[] = {1e-1, 1e-2, 1e-4};
  for (std::size_t m = 2; m <= 64; ++m) {
    for (double mu : mus) {
      for (double delta : deltas) {
        const auto spec = markov_cutoff(mu, delta, m);
        const auto b = log_rank_bounds(spec);
        t.record(std::min(b.bound_photon, b.bound_mode) - b.actual, [&] {
          return "m=" + std::to_string(m) + " mu=" + format_double(mu) +
                 " delta=" + format_double(delta) + " a=" + std::to_string(spec.cutoff);
        });
      }
    }
  }
  return std::move(t).finish();
}

SuiteResult suite_entropy(const VerifyOptions& opt) {
  Tracker t("entropy", kTolerance, opt.inject_fault);
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const auto k = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
    const auto e = entropy_bound(k, k);
    const auto describe = [&] { return "n=" + std::to_string(n) + " a=m=" + std::to_string(k); };
    t.record(e.bound - e.log2_rank, describe);
    if (n >= 100) {
      const double ratio = e.log2_rank / std::sqrt(static_cast<double>(n));
      t.record(std::min(ratio - 0.5, 2.1 - ratio), describe);
    }
  }
  return std::move(t).finish();
}

std::uint64_t count_tuples(std::size_t modes, std::uint64_t budget) {
  if (modes == 0) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= budget; ++k) total += count_tuples(modes - 1, budget - k);
  return total;
}

SuiteResult suite_rank(const VerifyOptions& opt) {
  Tracker t("rank", kTolerance, opt.inject_fault);
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::uint64_t a = 0; a <= 8; ++a) {
      const BigInt expected = count_tuples(m, a);
      const BigInt got = count_rank(m, a).rank;
      t.record(got == expected ? 0.0 : -std::numeric_limits<double>::infinity(), [&] {
        return "m=" + std::to_string(m) + " a=" + std::to_string(a) + " rank=" + got.str() +
               " enumerated=" + expected.str();
      });
    }
  }
  return std::move(t).finish();
}

SuiteResult suite_dcc(const VerifyOptions& opt) {
  Tracker t("dcc", kTolerance, opt.inject_fault);
  auto expect = [&](const FunctionTable& f, int want, const char* what) {
    const int got = bruteforce_deterministic_cc(f);
    t.record(-std::abs(got - want), [&] {
      return std::string(what) + " D=" + std::to_string(got) + " expected " + std::to_string(want);
    });
  };
  expect(equality_function(1), 2, "Eq_1");
  expect(equality_function(2), 3, "Eq_2");
  expect(FunctionTable(4, 4, std::vector<std::uint8_t>(16, 0)), 0, "constant-0");

  // Deleting rows or columns never raises the cost.
  auto check_monotone = [&](const FunctionTable& f, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols, const std::string& what) {
    const int full = bruteforce_deterministic_cc(f);
    const int sub = bruteforce_deterministic_cc(f.submatrix(rows, cols));
    t.record(full - sub, [&] { return what; });
  };
  for (unsigned bits = 0; bits < 16; ++bits) {
    std::vector<std::uint8_t> v(4);
    for (unsigned k = 0; k < 4; ++k) v[k] = (bits >> k) & 1u;
    const FunctionTable f(2, 2, v);
    const std::string what = "2x2 table bits=" + std::to_string(bits);
    check_monotone(f, {0}, {0, 1}, what + " drop row 1");
    check_monotone(f, {1}, {0, 1}, what + " drop row 0");
    check_monotone(f, {0, 1}, {0}, what + " drop col 1");
    check_monotone(f, {0, 1}, {1}, what + " drop col 0");
  }
  Rng rng = suite_rng(opt.seed, "dcc");
  const std::size_t trials = std::max<std::size_t>(1, opt.samples / 20);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t bits = uniform_int(rng, 0, 0xffff);
    std::vector<std::uint8_t> v(16);
    for (unsigned k = 0; k < 16; ++k) v[k] = (bits >> k) & 1u;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < 4; ++k) {
      if (uniform01(rng) < 0.6) rows.push_back(k);
      if (uniform01(rng) < 0.6) cols.push_back(k);
    }
    if (rows.empty()) rows.push_back(0);
    if (cols.empty()) cols.push_back(0);
    check_monotone(FunctionTable(4, 4, v), rows, cols, "4x4 table bits=" + std::to_string(bits));
  }
  return std::move(t).finish();
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"fock", suite_fock},     {"markov", suite_markov},   {"gentle", suite_gentle},
      {"closeness", suite_closeness}, {"lemma3", suite_lemma3}, {"lemma4", suite_lemma4},
      {"eq67", suite_eq67},     {"entropy", suite_entropy}, {"rank", suite_rank},
      {"dcc", suite_dcc}};
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(std::string_view name, const VerifyOptions& options) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn(options);
  }
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& options) {
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : registry()) out.push_back(fn(options));
  return out;
}

std::string format_summary(const std::vector<SuiteResult>& results) {
  std::ostringstream out;
  bool all = true;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %8s %20s  %s\n", "suite", "cases", "min_slack", "status");
  out << line;
  for (const auto& r : results) {
    all = all && r.passed;
    std::snprintf(line, sizeof line, "%-10s %8zu %20s  %s\n", r.name.c_str(), r.cases,
                  format_double(r.min_slack).c_str(), r.passed ? "PASS" : "FAIL");
    out << line;
    if (!r.passed) out << "  counterexample: " << r.counterexample << '\n';
  }
  out << (all ? "all suites passed" : "property violation") << '\n';
  return out.str();
}

SmpProtocol toy_interference_protocol() {
  auto encoder = [](std::uint64_t x) -> Message {
    const double s = 1.0 / std::numbers::sqrt2;
    return PureState(1, {{FockIndex::vacuum(1), s}, {FockIndex{1}, x ? -s : s}});
  };
  SmpProtocol p;
  p.name = "toy-interference";
  p.input_bits = 1;
  p.modes = 1;
  p.mu = 0.5;
  p.alice = encoder;
  p.bob = encoder;
  p.referee = InterferenceReferee{};
  p.target = equality;
  return p;
}

}  // namespace osmp
