// Acceptance suite: one PASS/FAIL line per criterion, tolerances and time
// limits pinned below. argv[1] is the osmp CLI used by the determinism check.
//
// Exit status is non-zero on any failure outside kKnownInfeasible. Entries
// there are still evaluated and printed as FAIL.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "osmp/bounds.hpp"
#include "osmp/combinatorics.hpp"
#include "osmp/ensembles.hpp"
#include "osmp/io.hpp"
#include "osmp/smp.hpp"
#include "osmp/transform.hpp"
#include "osmp/verify.hpp"

using namespace osmp;
namespace fs = std::filesystem;

namespace {

constexpr double kTol = 1e-9;
constexpr double kMarkovTol = 1e-12;
constexpr double kClosedFormTol = 1e-7;
constexpr double kMaxTail = 1e-10;

// Repetition-code n=4, m=12, mu_total=2 has worst error exp(-1) > 1/3.
const std::set<std::string> kKnownInfeasible{"8a"};

struct Outcome {
  bool pass;
  std::string detail;
};

int unexpected_failures = 0;

void criterion(const std::string& id, const std::string& name, double limit_seconds,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0.0 || secs < limit_seconds;
  const bool pass = o.pass && in_time;
  char timing[64];
  if (limit_seconds > 0.0) {
    std::snprintf(timing, sizeof timing, "%.2fs < %gs", secs, limit_seconds);
  } else {
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
  }
  std::printf("%s %-3s %-34s %s [%s]%s\n", pass ? "PASS" : "FAIL", id.c_str(), name.c_str(),
              o.detail.c_str(), timing, !pass && kKnownInfeasible.count(id) ? " (known infeasible)" : "");
  std::fflush(stdout);
  if (!pass && !kKnownInfeasible.count(id)) ++unexpected_failures;
}

std::string fmt(double v) { return format_double(v); }

Outcome from_suite(const SuiteResult& r) {
  std::string detail = std::to_string(r.cases) + " cases, min slack " + fmt(r.min_slack);
  if (!r.passed) detail += "; " + r.counterexample;
  return {r.passed, detail};
}

std::uint64_t enumerate_count(std::size_t modes, std::uint64_t a) {
  // Odometer over all tuples in {0..a}^modes, keeping those with sum <= a.
  std::vector<std::uint64_t> t(modes, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t s = 0;
    for (auto v : t) s += v;
    if (s <= a) ++count;
    std::size_t i = 0;
    while (i < modes && ++t[i] > a) t[i++] = 0;
    if (i == modes) return count;
  }
}

std::string run_capture(const std::string& cli, const std::string& args, const fs::path& out) {
  const std::string cmd = "\"" + cli + "\" " + args + " --out \"" + out.string() + "\" > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status != 0 && !(WIFEXITED(status) && WEXITSTATUS(status) == 0)) {
    throw std::runtime_error("command failed: " + cmd);
  }
  return read_file(out);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "osmp";
  VerifyOptions defaults;

  criterion("1", "binomial bound exact sweep", 5.0, [] {
    std::size_t cases = 0;
    for (std::uint64_t n = 1; n <= 50; ++n) {
      for (std::uint64_t m = 1; m <= 50; ++m) {
        const auto b = lemma4_bound(n, m);
        ++cases;
        if (b.lhs > b.rhs) {
          return Outcome{false, "n=" + std::to_string(n) + " m=" + std::to_string(m)};
        }
      }
    }
    return Outcome{cases == 2500, std::to_string(cases) + " exact comparisons"};
  });

  criterion("2", "rank formula vs enumeration", 5.0, [] {
    std::size_t cases = 0;
    for (std::size_t m = 1; m <= 5; ++m) {
      for (std::uint64_t a = 0; a <= 8; ++a) {
        ++cases;
        if (count_rank(m, a).rank != enumerate_count(m, a)) {
          return Outcome{false, "m=" + std::to_string(m) + " a=" + std::to_string(a)};
        }
      }
    }
    return Outcome{true, std::to_string(cases) + " (m, a) points"};
  });

  criterion("3", "log-rank sweep", 30.0, [] {
    const double mus[] = {0.5, 1.0, 2.0, 4.0, 8.0};
    const double deltas[] = {1e-1, 1e-2, 1e-4};
    double worst = INFINITY;
    std::size_t cases = 0;
    std::size_t large_a = 0;
    for (std::size_t m = 2; m <= 64; ++m) {
      for (double mu : mus) {
        for (double delta : deltas) {
          const auto spec = markov_cutoff(mu, delta, m);
          if (delta == 1e-4 && spec.cutoff == static_cast<std::uint64_t>(std::floor(1e4 * mu))) ++large_a;
          const auto b = log_rank_bounds(spec);
          worst = std::min(worst, std::min(b.bound_photon, b.bound_mode) - b.actual);
          ++cases;
        }
      }
    }
    return Outcome{worst >= -kTol && large_a == 63 * 5,
                   std::to_string(cases) + " points (" + std::to_string(large_a) +
                       " at a=floor(1e4 mu)), min slack " + fmt(worst)};
  });

  criterion("4", "gentle measurement", 60.0, [&] { return from_suite(run_suite("gentle", defaults)); });

  criterion("5", "projector closeness", 60.0, [&] { return from_suite(run_suite("closeness", defaults)); });

  criterion("6", "protocol transform budget", 120.0, [] {
    const double delta = 1e-4;
    const auto qfp = coherent_fingerprint_protocol(repetition_code(4, 3), 2.0);
    const double before = evaluate_error(qfp).worst_error;
    const auto tr = transform_protocol(qfp, delta, before);
    const double after = evaluate_error(tr.protocol).worst_error;
    bool ok = after <= before + 2.0 * std::sqrt(delta) + kTol;
    std::ostringstream d;
    d << "qfp before " << fmt(before) << " after " << fmt(after);

    // A cutoff that actually removes weight.
    const auto small = coherent_fingerprint_protocol(repetition_code(2, 2), 2.0);
    const double sb = evaluate_error(small).worst_error;
    const auto st = transform_protocol(small, 0.3, sb);
    const double sa = evaluate_error(st.protocol).worst_error;
    ok = ok && st.min_weight < 1.0 && sa <= sb + 2.0 * std::sqrt(0.3) + kTol;
    d << "; delta=0.3 weight " << fmt(st.min_weight) << " before " << fmt(sb) << " after " << fmt(sa);

    // Toy protocol with hand-perturbed messages.
    const auto toy = toy_interference_protocol();
    const auto base = evaluate_error(toy);
    Rng rng(6);
    double worst_inflation_slack = INFINITY;
    for (double t : {0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0}) {
      for (int rep = 0; rep < 20; ++rep) {
        std::vector<Message> alice, bob;
        for (std::uint64_t x = 0; x < 2; ++x) {
          alice.push_back(perturb(rng, std::get<PureState>(toy.alice(x)), t, {FockIndex{2}, FockIndex{3}}));
          bob.push_back(perturb(rng, std::get<PureState>(toy.bob(x)), t, {FockIndex{2}, FockIndex{3}}));
        }
        const auto p = evaluate_error(toy, alice, bob);
        worst_inflation_slack = std::min(worst_inflation_slack, base.worst_error + 2.0 * t - p.worst_error);
      }
    }
    ok = ok && worst_inflation_slack >= -kTol;
    d << "; toy min slack " << fmt(worst_inflation_slack);
    return Outcome{ok, d.str()};
  });

  criterion("7", "markov inequality", 10.0, [&] {
    const auto r = run_suite("markov", defaults);
    // The suite compares against 1e-12 itself; recheck the pinned tolerance here.
    return Outcome{r.passed && r.min_slack >= -kMarkovTol,
                   std::to_string(r.cases) + " (state, a) cases, min slack " + fmt(r.min_slack)};
  });

  const auto code = repetition_code(4, 3);
  const auto qfp = coherent_fingerprint_protocol(code, 2.0);
  criterion("8a", "qfp worst error below 1/3", 120.0, [&] {
    const auto r = evaluate_error(qfp);
    return Outcome{r.per_pair.size() == 256 && r.worst_error < 1.0 / 3.0,
                   "worst error " + fmt(r.worst_error) + " at (" + std::to_string(r.worst_x) + "," +
                       std::to_string(r.worst_y) + "), d_min=" + std::to_string(code.min_distance)};
  });

  criterion("8b", "qfp closed form vs fock", 120.0, [&] {
    const auto r = evaluate_error(qfp);
    const double alpha2 = 2.0 / 12.0;
    double worst = 0.0;
    std::size_t unequal = 0;
    for (const auto& pe : r.per_pair) {
      if (pe.x == pe.y) continue;
      const int d = hamming_distance(code.encode(pe.x), code.encode(pe.y));
      worst = std::max(worst, std::abs(pe.p_error - std::exp(-2.0 * alpha2 * d)));
      ++unequal;
    }
    return Outcome{worst <= kClosedFormTol && qfp.tail_mass < kMaxTail && unequal == 240,
                   std::to_string(unequal) + " unequal pairs, max deviation " + fmt(worst) +
                       ", tail " + fmt(qfp.tail_mass)};
  });

  criterion("9", "entropy bound and sqrt(n) profile", 30.0, [] {
    double worst = INFINITY;
    double lo = INFINITY;
    double hi = -INFINITY;
    bool central_ok = true;
    for (std::uint64_t n = 1; n <= 10000; ++n) {
      const auto k = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
      const auto e = entropy_bound(k, k);
      worst = std::min(worst, e.bound - e.log2_rank);
      if (n >= 100) {
        const double ratio = e.log2_rank / std::sqrt(static_cast<double>(n));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        // C(2k,k) >= 4^k / (2k+1), exactly.
        central_ok = central_ok && binomial(2 * k, k) * (2 * k + 1) >= (BigInt(1) << (2 * k));
      }
    }
    return Outcome{worst >= -kTol && lo >= 0.5 && hi <= 2.1 && central_ok,
                   "min slack " + fmt(worst) + ", ratio in [" + fmt(lo) + ", " + fmt(hi) + "]"};
  });

  criterion("10", "deterministic complexity oracle", 60.0, [] {
    const int eq1 = bruteforce_deterministic_cc(equality_function(1));
    const int eq2 = bruteforce_deterministic_cc(equality_function(2));
    const int c0 = bruteforce_deterministic_cc(FunctionTable(4, 4, std::vector<std::uint8_t>(16, 0)));
    bool mono = true;
    for (unsigned bits = 0; bits < 16; ++bits) {
      std::vector<std::uint8_t> v(4);
      for (unsigned k = 0; k < 4; ++k) v[k] = (bits >> k) & 1u;
      const FunctionTable f(2, 2, v);
      const int full = bruteforce_deterministic_cc(f);
      for (const auto& rc : std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>{
               {{0}, {0, 1}}, {{1}, {0, 1}}, {{0, 1}, {0}}, {{0, 1}, {1}}, {{0}, {0}}, {{1}, {1}}}) {
        mono = mono && bruteforce_deterministic_cc(f.submatrix(rc.first, rc.second)) <= full;
      }
    }
    return Outcome{eq1 == 2 && eq2 == 3 && c0 == 0 && mono,
                   "Eq1=" + std::to_string(eq1) + " Eq2=" + std::to_string(eq2) + " const=" +
                       std::to_string(c0) + (mono ? ", monotone on all 2x2" : ", NOT monotone")};
  });

  criterion("11", "byte-identical reruns", 0.0, [&] {
    const fs::path dir = fs::temp_directory_path() / ("osmp_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto qfp_cfg = dir / "qfp.json";
    const auto sampled_cfg = dir / "sampled.json";
    const auto grid_cfg = dir / "grid.json";
    std::ofstream(qfp_cfg) << R"({"type":"qfp","n":4,"m":12,"mu":2})";
    std::ofstream(sampled_cfg) << R"({"type":"qfp","n":16,"mu":2,"mode":"sampled","samples":64,"shots":500})";
    std::ofstream(grid_cfg) << R"({"m":{"from":2,"to":16},"mu":[0.5,1,2],"n":[2,3]})";
    const std::vector<std::pair<std::string, std::string>> runs{
        {"verify", "verify --seed 7 --samples 300 --jobs 2"},
        {"bounds", "bounds --config \"" + grid_cfg.string() + "\" --jobs 2"},
        {"simulate", "simulate --config \"" + qfp_cfg.string() + "\" --truncate 1e-4 --jobs 2"},
        {"simulate-sampled", "simulate --config \"" + sampled_cfg.string() + "\" --seed 11"},
    };
    bool ok = true;
    std::string detail;
    for (const auto& [name, args] : runs) {
      const auto a = run_capture(cli, args, dir / (name + ".1"));
      const auto b = run_capture(cli, args, dir / (name + ".2"));
      const bool same = !a.empty() && a == b;
      ok = ok && same;
      detail += name + (same ? " identical; " : " DIFFER; ");
    }
    fs::remove_all(dir);
    return Outcome{ok, detail};
  });

  std::printf("%s\n", unexpected_failures == 0 ? "acceptance: no unexpected failures"
                                               : "acceptance: unexpected failures present");
  return unexpected_failures == 0 ? 0 : 1;
}
