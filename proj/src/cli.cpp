#include "osmp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "osmp/bounds.hpp"
#include "osmp/combinatorics.hpp"
#include "osmp/io.hpp"
#include "osmp/parallel.hpp"
#include "osmp/transform.hpp"
#include "osmp/truncation.hpp"
#include "osmp/verify.hpp"

namespace osmp {

namespace {

[[noreturn]] void bad_field(std::string_view field, std::string_view why) {
  throw config_error("field '" + std::string(field) + "': " + std::string(why));
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

double parse_number(const std::string& token, std::string_view field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    bad_field(field, "cannot parse '" + token + "' as a number");
  }
  if (used != token.size() || !std::isfinite(v)) bad_field(field, "cannot parse '" + token + "' as a number");
  return v;
}

std::vector<double> expand_range(double from, double to, double step, std::string_view field) {
  if (!(step > 0.0)) bad_field(field, "range step must be positive");
  if (to < from) bad_field(field, "empty range");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  if (count > 100000) bad_field(field, "range has too many points");
  for (std::size_t i = 0; i < count; ++i) out.push_back(from + static_cast<double>(i) * step);
  return out;
}

/// "2..8", "0.5,1,2" or "1,4..6".
std::vector<double> parse_list_flag(const std::string& text, std::string_view field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number(token, field));
    } else {
      const auto range = expand_range(parse_number(token.substr(0, dots), field),
                                      parse_number(token.substr(dots + 2), field), 1.0, field);
      out.insert(out.end(), range.begin(), range.end());
    }
  }
  if (out.empty()) bad_field(field, "empty list");
  return out;
}

/// Number, array of numbers, or {"from": a, "to": b, "step": s}.
std::vector<double> parse_list_json(const json& j, std::string_view field) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    if (j.empty()) bad_field(field, "empty list");
    std::vector<double> out;
    for (const auto& e : j) {
      if (!e.is_number()) bad_field(field, "expected numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  if (j.is_object()) {
    if (!j.contains("from") || !j["from"].is_number()) bad_field(field, "range needs numeric 'from'");
    if (!j.contains("to") || !j["to"].is_number()) bad_field(field, "range needs numeric 'to'");
    const double step = j.contains("step") ? (j["step"].is_number() ? j["step"].get<double>() : -1.0) : 1.0;
    return expand_range(j["from"].get<double>(), j["to"].get<double>(), step, field);
  }
  bad_field(field, "expected a number, an array or a {from, to} range");
}

std::vector<long long> as_integers(const std::vector<double>& values, std::string_view field,
                                   long long lo, long long hi) {
  std::vector<long long> out;
  for (double v : values) {
    if (v != std::floor(v)) bad_field(field, "expected integers");
    if (v < static_cast<double>(lo) || v > static_cast<double>(hi)) {
      bad_field(field, "values must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    out.push_back(static_cast<long long>(v));
  }
  return out;
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) bad_field("delta", "must lie in (0,1)");
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
  std::string config;
  std::string out;
  std::optional<double> delta;
  std::string n;
  std::string m;
  std::string mu;
  unsigned jobs = 1;
};

int cmd_bounds(const BoundsArgs& args, std::ostream& out) {
  json cfg = json::object();
  if (!args.config.empty()) cfg = parse_json(read_file(args.config), args.config);
  if (!cfg.is_object()) throw config_error("bounds config must be a JSON object");
  static const char* known[] = {"preset", "n", "m", "mu", "mu_total", "factor", "delta"};
  for (const auto& [key, value] : cfg.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) bad_field(key, "unknown key");
  }

  double delta = kDefaultDelta;
  if (cfg.contains("delta")) {
    if (!cfg["delta"].is_number()) bad_field("delta", "expected a number");
    delta = cfg["delta"].get<double>();
  }
  if (args.delta) delta = *args.delta;
  check_delta(delta);

  auto list = [&](const char* field, const std::string& flag) -> std::optional<std::vector<double>> {
    if (!flag.empty()) return parse_list_flag(flag, field);
    if (cfg.contains(field)) return parse_list_json(cfg[field], field);
    return std::nullopt;
  };

  std::vector<ProtocolParams> points;
  std::vector<std::optional<SmpProtocol>> protocols;
  const bool qfp = cfg.contains("preset");
  if (qfp) {
    if (cfg["preset"] != "qfp") bad_field("preset", "expected \"qfp\"");
    const auto ns = list("n", args.n);
    if (!ns) bad_field("n", "missing (required by the qfp preset)");
    double mu_total = 2.0;
    if (cfg.contains("mu_total")) {
      if (!cfg["mu_total"].is_number() || !(cfg["mu_total"].get<double>() > 0.0)) {
        bad_field("mu_total", "expected a positive number");
      }
      mu_total = cfg["mu_total"].get<double>();
    }
    int factor = 3;
    if (cfg.contains("factor")) {
      factor = static_cast<int>(as_integers(parse_list_json(cfg["factor"], "factor"), "factor", 1, 4096).front());
    }
    std::vector<int> n_values;
    for (auto n : as_integers(*ns, "n", 1, 63)) n_values.push_back(static_cast<int>(n));
    if (static_cast<long long>(factor) * n_values.front() < 2) bad_field("factor", "m = factor * n must be >= 2");
    for (auto& [params, protocol] : qfp_family(n_values, mu_total, factor, delta)) {
      points.push_back(params);
      protocols.emplace_back(std::move(protocol));
    }
  } else {
    const auto ms = list("m", args.m);
    if (!ms) bad_field("m", "missing");
    const auto mus = list("mu", args.mu);
    if (!mus) bad_field("mu", "missing");
    for (double mu : *mus) {
      if (!(mu >= 0.0)) bad_field("mu", "values must be non-negative");
    }
    std::vector<std::optional<int>> ns{std::nullopt};
    if (auto n_list = list("n", args.n)) {
      ns.clear();
      for (auto n : as_integers(*n_list, "n", 1, 1 << 20)) ns.emplace_back(static_cast<int>(n));
    }
    const auto m_values = as_integers(*ms, "m", 2, 1 << 24);
    for (const auto& n : ns) {
      for (auto m : m_values) {
        for (double mu : *mus) {
          ProtocolParams p;
          p.n = n;
          p.m = static_cast<std::size_t>(m);
          p.mu = mu;
          p.delta = delta;
          p.source = "grid";
          points.push_back(p);
          protocols.emplace_back(std::nullopt);
        }
      }
    }
  }

  std::vector<TradeoffReport> reports(points.size());
  parallel_for(points.size(), args.jobs, [&](std::size_t i) {
    const auto refs = points[i].n ? equality_references(*points[i].n) : std::vector<ComplexityReference>{};
    reports[i] = protocols[i] ? build_report(points[i], refs, *protocols[i]) : build_report(points[i], refs);
  });
  sort_reports(reports);

  std::string csv = report_csv_header() + "\n";
  for (const auto& r : reports) csv += report_csv_row(r) + "\n";
  emit(args.out, csv, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> truncate;
  unsigned jobs = 1;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  if (args.config.empty()) bad_field("config", "a protocol spec is required");
  const ProtocolSpec spec = parse_protocol_spec(parse_json(read_file(args.config), args.config));
  const SmpProtocol protocol = build_protocol(spec);

  EvaluationOptions options;
  options.jobs = args.jobs;
  options.samples = spec.samples;
  options.shots = spec.shots;
  options.seed = args.seed ? args.seed : spec.seed;
  if (spec.mode == "sampled") {
    options.mode = EvaluationOptions::Mode::sampled;
    if (!options.seed) bad_field("seed", "required for sampled evaluation");
  }
  const ErrorReport before = evaluate_error(protocol, options);

  std::optional<TransformResult> transformed;
  std::optional<ErrorReport> after;
  if (args.truncate) {
    check_delta(*args.truncate);
    transformed = transform_protocol(protocol, *args.truncate, before.worst_error, args.jobs);
    after = evaluate_error(transformed->protocol, options);
    if (after->per_pair.size() != before.per_pair.size()) {
      throw std::runtime_error("simulate: truncated evaluation drew different pairs");
    }
  }

  std::ostringstream csv;
  csv << "# protocol=" << protocol.name << ";n=" << protocol.input_bits << ";m=" << protocol.modes
      << ";mu=" << format_double(protocol.mu) << ";mode=" << spec.mode;
  if (before.sampled) csv << ";seed=" << before.seed << ";shots=" << before.shots;
  csv << '\n';
  csv << "# worst_error=" << format_double(before.worst_error) << ";worst_x=" << before.worst_x
      << ";worst_y=" << before.worst_y << '\n';
  if (transformed) {
    const double budget = transformed->error_bound;
    csv << "# truncate delta=" << format_double(*args.truncate) << ";cutoff=" << transformed->spec.cutoff
        << ";worst_error_truncated=" << format_double(after->worst_error)
        << ";budget=" << format_double(budget)
        << ";min_weight=" << format_double(transformed->min_weight)
        << ";max_trace_distance=" << format_double(transformed->max_trace_distance) << '\n';
  }
  csv << "x,y,f,p_error";
  if (before.sampled) csv << ",std_error";
  if (transformed) csv << ",p_error_truncated,budget";
  csv << '\n';
  const double closeness = args.truncate ? std::sqrt(*args.truncate) : 0.0;
  for (std::size_t i = 0; i < before.per_pair.size(); ++i) {
    const auto& pe = before.per_pair[i];
    csv << pe.x << ',' << pe.y << ',' << int(pe.f) << ',' << format_double(pe.p_error);
    if (before.sampled) csv << ',' << format_double(pe.std_error);
    if (transformed) {
      const auto& pt = after->per_pair[i];
      if (pt.x != pe.x || pt.y != pe.y) throw std::runtime_error("simulate: pair order mismatch");
      csv << ',' << format_double(pt.p_error) << ','
          << format_double(lemma3_error_bound(pe.p_error, closeness));
    }
    csv << '\n';
  }
  emit(args.out, csv.str(), out);
  if (!args.out.empty() && args.out != "-") {
    out << "worst_error=" << format_double(before.worst_error) << " at (" << before.worst_x << ','
        << before.worst_y << ")\n";
    if (transformed) {
      out << "worst_error_truncated=" << format_double(after->worst_error)
          << " budget=" << format_double(transformed->error_bound) << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string out;
  std::string suite;
  std::uint64_t seed = VerifyOptions{}.seed;
  std::size_t samples = VerifyOptions{}.samples;
  std::uint64_t max = VerifyOptions{}.max;
  unsigned jobs = 1;
  bool inject_fault = false;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  VerifyOptions options;
  options.seed = args.seed;
  options.samples = args.samples;
  options.max = args.max;
  options.jobs = args.jobs;
  options.inject_fault = args.inject_fault;

  std::vector<SuiteResult> results;
  if (args.suite.empty() || args.suite == "all") {
    results = run_all_suites(options);
  } else {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), args.suite) == names.end()) {
      bad_field("suite", "unknown suite '" + args.suite + "'");
    }
    results.push_back(run_suite(args.suite, options));
  }
  const std::string summary = "# seed=" + std::to_string(args.seed) + ";samples=" +
                              std::to_string(args.samples) + ";max=" + std::to_string(args.max) +
                              "\n" + format_summary(results);
  emit(args.out, summary, out);
  if (!args.out.empty() && args.out != "-") out << summary;
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// dcc and rank

int cmd_dcc(const std::string& config, const std::string& out_path, std::ostream& out) {
  if (config.empty()) bad_field("config", "a function table is required");
  const FunctionTable table = parse_function_table(parse_json(read_file(config), config));
  if (table.rows() > kMaxOracleSide || table.cols() > kMaxOracleSide) {
    bad_field("values", "table is " + std::to_string(table.rows()) + "x" + std::to_string(table.cols()) +
                            "; the exact oracle accepts at most " + std::to_string(kMaxOracleSide) +
                            "x" + std::to_string(kMaxOracleSide));
  }
  const int d = bruteforce_deterministic_cc(table);
  emit(out_path, "D=" + std::to_string(d) + " convention=leaves-monochromatic-answer-free\n", out);
  return kExitOk;
}

struct RankArgs {
  std::string out;
  std::optional<std::uint64_t> modes;
  std::optional<std::uint64_t> cutoff;
  std::optional<double> mu;
  std::optional<double> delta;
};

int cmd_rank(const RankArgs& args, std::ostream& out) {
  if (!args.modes || *args.modes < 1) bad_field("m", "required, >= 1");
  std::uint64_t a = 0;
  if (args.cutoff) {
    a = *args.cutoff;
  } else if (args.mu) {
    const double delta = args.delta.value_or(kDefaultDelta);
    check_delta(delta);
    if (!(*args.mu >= 0.0)) bad_field("mu", "must be non-negative");
    a = markov_cutoff(*args.mu, delta, *args.modes).cutoff;
  } else {
    bad_field("a", "give the cutoff -a or --mu (with optional --delta)");
  }
  const RankCount rc = count_rank(*args.modes, a);
  emit(args.out,
       "m=" + std::to_string(rc.modes) + " a=" + std::to_string(rc.cutoff) + " rank=" + rc.rank.str() +
           " log2_rank=" + format_double(rc.log2_rank) + "\n",
       out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncation, simulation and bound sweeps for optical SMP protocols", "osmp"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Tradeoff table over a parameter grid or a protocol family");
  b->add_option("--config", bounds.config, "JSON grid or preset");
  b->add_option("--out", bounds.out, "Output CSV (stdout if omitted)");
  b->add_option("--delta", bounds.delta, "Truncation parameter in (0,1), default 1e-4");
  b->add_option("--n", bounds.n, "Input lengths, e.g. 4,8 or 2..6");
  b->add_option("--m", bounds.m, "Mode counts, e.g. 2..8");
  b->add_option("--mu", bounds.mu, "Mean photon numbers, e.g. 0.5,1,2");
  b->add_option("--jobs", bounds.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  b->add_option("--seed", "Accepted for uniformity; bounds are deterministic");

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "Evaluate a protocol's error, optionally after truncation");
  s->add_option("--config", simulate.config, "JSON protocol spec")->required();
  s->add_option("--out", simulate.out, "Output CSV (stdout if omitted)");
  s->add_option("--seed", simulate.seed, "Seed for sampled evaluation");
  s->add_option("--truncate", simulate.truncate, "Also truncate with this delta");
  s->add_option("--jobs", simulate.jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the property suites");
  v->add_option("--suite", verify.suite, "Run only this suite");
  v->add_option("--seed", verify.seed, "Seed for randomized suites");
  v->add_option("--samples", verify.samples, "Random cases per randomized suite")->check(CLI::Range(1ul, 1000000ul));
  v->add_option("--max", verify.max, "Upper bound of the lemma4 sweep")->check(CLI::Range(1ul, 400ul));
  v->add_option("--jobs", verify.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  v->add_option("--out", verify.out, "Also write the summary here");
  v->add_flag("--inject-fault", verify.inject_fault)->group("");

  std::string dcc_config;
  std::string dcc_out;
  auto* d = app.add_subcommand("dcc", "Exact deterministic communication complexity of a small table");
  d->add_option("--config", dcc_config, "JSON function table")->required();
  d->add_option("--out", dcc_out, "Output file (stdout if omitted)");

  RankArgs rank;
  auto* r = app.add_subcommand("rank", "Dimension of the truncated subspace");
  r->add_option("-m,--modes", rank.modes, "Number of modes");
  r->add_option("-a,--cutoff", rank.cutoff, "Total photon cutoff");
  r->add_option("--mu", rank.mu, "Mean photon number (cutoff floor(mu/delta))");
  r->add_option("--delta", rank.delta, "Truncation parameter, default 1e-4");
  r->add_option("--out", rank.out, "Output file (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (b->parsed()) return cmd_bounds(bounds, out);
    if (s->parsed()) return cmd_simulate(simulate, out);
    if (v->parsed()) return cmd_verify(verify, out);
    if (d->parsed()) return cmd_dcc(dcc_config, dcc_out, out);
    if (r->parsed()) return cmd_rank(rank, out);
  } catch (const config_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  err << "error: no subcommand\n";
  return kExitConfig;
}

}  // namespace osmp
