#include "osmp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace osmp {

namespace {

[[noreturn]] void bad_field(std::string_view field, std::string_view why) {
  throw config_error("field '" + std::string(field) + "': " + std::string(why));
}

const json& require(const json& j, const char* field) {
  if (!j.is_object()) throw config_error("expected a JSON object");
  auto it = j.find(field);
  if (it == j.end()) bad_field(field, "missing");
  return *it;
}

std::int64_t as_int(const json& v, std::string_view field, std::int64_t lo, std::int64_t hi) {
  if (!v.is_number_integer()) bad_field(field, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    bad_field(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

double as_number(const json& v, std::string_view field) {
  if (!v.is_number()) bad_field(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad_field(field, "must be finite");
  return x;
}

std::vector<std::uint8_t> as_bit_row(const json& v, std::string_view field) {
  if (!v.is_array() || v.empty()) bad_field(field, "expected a non-empty array of 0/1");
  std::vector<std::uint8_t> row;
  for (const auto& e : v) row.push_back(static_cast<std::uint8_t>(as_int(e, field, 0, 1)));
  return row;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string(what) + ": malformed JSON (" + e.what() + ")");
  }
}

// ---------------------------------------------------------------------------
// States

json to_json(const PureState& state) {
  json terms = json::array();
  for (const auto& [index, amp] : state.terms()) {
    auto occ = index.occupations();
    terms.push_back({{"occ", std::vector<std::uint32_t>(occ.begin(), occ.end())},
                     {"re", amp.real()},
                     {"im", amp.imag()}});
  }
  return {{"modes", state.modes()}, {"kind", "pure"}, {"terms", std::move(terms)}};
}

json to_json(const FockDiagonalState& state) {
  json terms = json::array();
  for (const auto& [index, p] : state.weights()) {
    auto occ = index.occupations();
    terms.push_back({{"occ", std::vector<std::uint32_t>(occ.begin(), occ.end())}, {"p", p}});
  }
  return {{"modes", state.modes()}, {"kind", "diagonal"}, {"terms", std::move(terms)}};
}

Message state_from_json(const json& j) {
  const auto modes = static_cast<std::size_t>(as_int(require(j, "modes"), "modes", 1, 1 << 20));
  const auto& kind = require(j, "kind");
  if (!kind.is_string()) bad_field("kind", "expected \"pure\" or \"diagonal\"");
  const auto& terms = require(j, "terms");
  if (!terms.is_array()) bad_field("terms", "expected an array");

  auto read_occ = [&](const json& t) {
    const auto& occ = require(t, "occ");
    if (!occ.is_array() || occ.size() != modes) bad_field("terms.occ", "length must equal modes");
    std::vector<std::uint32_t> v;
    for (const auto& e : occ) v.push_back(static_cast<std::uint32_t>(as_int(e, "terms.occ", 0, 1 << 30)));
    return FockIndex(std::move(v));
  };

  if (kind == "pure") {
    PureState::Terms out;
    for (const auto& t : terms) {
      const Complex amp(as_number(require(t, "re"), "terms.re"),
                        t.contains("im") ? as_number(t["im"], "terms.im") : 0.0);
      if (!out.emplace(read_occ(t), amp).second) bad_field("terms.occ", "repeated occupation tuple");
    }
    return PureState(modes, std::move(out));
  }
  if (kind == "diagonal") {
    FockDiagonalState::Weights out;
    for (const auto& t : terms) {
      const double p = as_number(require(t, "p"), "terms.p");
      if (p < 0.0) bad_field("terms.p", "probabilities must be non-negative");
      if (!out.emplace(read_occ(t), p).second) bad_field("terms.occ", "repeated occupation tuple");
    }
    return FockDiagonalState(modes, std::move(out));
  }
  bad_field("kind", "expected \"pure\" or \"diagonal\"");
}

// ---------------------------------------------------------------------------
// Protocols

ProtocolSpec parse_protocol_spec(const json& j) {
  if (!j.is_object()) throw config_error("protocol spec must be a JSON object");
  ProtocolSpec spec;
  const auto& type = require(j, "type");
  if (!type.is_string() || (type != "qfp" && type != "classical-trivial")) {
    bad_field("type", "expected \"qfp\" or \"classical-trivial\"");
  }
  spec.type = type.get<std::string>();
  spec.n = static_cast<int>(as_int(require(j, "n"), "n", 1, 63));
  if (j.contains("m")) spec.m = static_cast<int>(as_int(j["m"], "m", 1, 1 << 20));
  if (j.contains("mu")) {
    spec.mu = as_number(j["mu"], "mu");
    if (!(*spec.mu > 0.0)) bad_field("mu", "must be positive");
  } else if (spec.type == "qfp") {
    bad_field("mu", "missing");
  }
  if (j.contains("code")) {
    if (!j["code"].is_object()) bad_field("code", "expected an object");
    spec.code = j["code"];
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) bad_field("seed", "expected an unsigned integer");
    if (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() < 0) bad_field("seed", "must be non-negative");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("mode")) {
    if (!j["mode"].is_string() || (j["mode"] != "exhaustive" && j["mode"] != "sampled")) {
      bad_field("mode", "expected \"exhaustive\" or \"sampled\"");
    }
    spec.mode = j["mode"].get<std::string>();
  }
  if (j.contains("samples")) spec.samples = static_cast<std::size_t>(as_int(j["samples"], "samples", 1, 1 << 24));
  if (j.contains("shots")) spec.shots = static_cast<std::size_t>(as_int(j["shots"], "shots", 1, 1 << 30));
  if (spec.mode == "exhaustive" && spec.n > kMaxExhaustiveBits) {
    bad_field("n", "exhaustive evaluation requires n <= " + std::to_string(kMaxExhaustiveBits));
  }
  return spec;
}

BinaryCode parse_code(const json& j, int n, std::optional<int> m) {
  BinaryCode code;
  if (j.is_null() || j.empty()) {
    if (!m) return identity_code(n);
    if (*m % n != 0) bad_field("m", "must be a multiple of n for the default repetition code");
    code = repetition_code(n, *m / n);
  } else {
    const auto& kind = require(j, "kind");
    if (kind == "identity") {
      code = identity_code(n);
    } else if (kind == "repetition") {
      int factor = 0;
      if (j.contains("factor")) {
        factor = static_cast<int>(as_int(j["factor"], "code.factor", 1, 1 << 16));
      } else if (m && *m % n == 0) {
        factor = *m / n;
      } else {
        bad_field("code.factor", "missing and not derivable from m");
      }
      code = repetition_code(n, factor);
    } else if (kind == "linear") {
      const auto& gen = require(j, "generator");
      if (!gen.is_array() || static_cast<int>(gen.size()) != n) {
        bad_field("code.generator", "expected n rows");
      }
      std::vector<std::vector<std::uint8_t>> rows;
      for (const auto& r : gen) rows.push_back(as_bit_row(r, "code.generator"));
      try {
        code = linear_code(rows);
      } catch (const std::invalid_argument& e) {
        bad_field("code.generator", e.what());
      }
    } else {
      bad_field("code.kind", "expected \"identity\", \"repetition\" or \"linear\"");
    }
  }
  if (m && code.length != *m) {
    bad_field("m", "code length " + std::to_string(code.length) + " differs from m");
  }
  return code;
}

SmpProtocol build_protocol(const ProtocolSpec& spec) {
  const BinaryCode code = parse_code(spec.code, spec.n, spec.m);
  if (spec.type == "qfp") return coherent_fingerprint_protocol(code, *spec.mu);
  return trivial_classical_protocol(code);
}

FunctionTable parse_function_table(const json& j) {
  if (!j.is_object()) throw config_error("function table must be a JSON object");
  if (j.contains("values")) {
    const auto& values = j["values"];
    if (!values.is_array() || values.empty()) bad_field("values", "expected a non-empty array of rows");
    std::vector<std::uint8_t> flat;
    std::size_t cols = 0;
    for (const auto& r : values) {
      auto row = as_bit_row(r, "values");
      if (cols == 0) cols = row.size();
      if (row.size() != cols) bad_field("values", "rows must have equal length");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return FunctionTable(values.size(), cols, std::move(flat));
  }
  const auto& fn = require(j, "function");
  const int n = static_cast<int>(as_int(require(j, "n"), "n", 1, kMaxTableBits));
  if (fn == "equality") return equality_function(n);
  if (fn == "constant") {
    const auto v = static_cast<std::uint8_t>(j.contains("value") ? as_int(j["value"], "value", 0, 1) : 0);
    const std::size_t side = std::size_t{1} << n;
    return FunctionTable(side, side, std::vector<std::uint8_t>(side * side, v));
  }
  bad_field("function", "expected \"equality\" or \"constant\"");
}

std::string error_report_csv(const ErrorReport& report) {
  std::ostringstream out;
  out << "x,y,f,p_error" << (report.sampled ? ",std_error" : "") << '\n';
  for (const auto& pe : report.per_pair) {
    out << pe.x << ',' << pe.y << ',' << int(pe.f) << ',' << format_double(pe.p_error);
    if (report.sampled) out << ',' << format_double(pe.std_error);
    out << '\n';
  }
  return out.str();
}

}  // namespace osmp
