// JSON and CSV surfaces: state and protocol specs, function tables, reports.
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "osmp/fock.hpp"
#include "osmp/smp.hpp"

namespace osmp {

using json = nlohmann::json;

/// Invalid user-supplied configuration; the message names the offending field.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest round-trippable-enough decimal form used in every CSV ("%.12g").
std::string format_double(double value);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Parses text as JSON, turning syntax errors into config_error.
json parse_json(std::string_view text, std::string_view what);

// States: {"modes": m, "kind": "pure"|"diagonal",
//          "terms": [{"occ": [...], "re": x, "im": y} | {"occ": [...], "p": p}]}
json to_json(const PureState& state);
json to_json(const FockDiagonalState& state);
/// Returns a PureState or FockDiagonalState.
Message state_from_json(const json& j);

// Protocol specs: {"type": "qfp"|"classical-trivial", "n":..., "m":..., "mu":...,
//                  "code": {...}, "seed":...}
struct ProtocolSpec {
  std::string type;
  int n = 0;
  std::optional<int> m;
  std::optional<double> mu;
  json code;
  std::optional<std::uint64_t> seed;
  std::string mode = "exhaustive";  // or "sampled"
  std::size_t samples = 256;
  std::size_t shots = 1000;
};

ProtocolSpec parse_protocol_spec(const json& j);

/// {"kind": "repetition", "factor": r} | {"kind": "identity"} |
/// {"kind": "linear", "generator": [[...], ...]}. Defaults to a repetition
/// code with factor m/n when m is given, identity otherwise.
BinaryCode parse_code(const json& j, int n, std::optional<int> m);

SmpProtocol build_protocol(const ProtocolSpec& spec);

/// {"values": [[0,1],[1,0]]}, or {"function": "equality"|"constant", "n": n, "value": v}.
FunctionTable parse_function_table(const json& j);

/// CSV with columns x,y,f,p_error (+ std_error when sampled).
std::string error_report_csv(const ErrorReport& report);

}  // namespace osmp
