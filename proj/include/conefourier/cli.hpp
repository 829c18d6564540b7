#pragma once

// Command-line front end: eval, check, suite and table. The executable in
// tools/ only forwards to run_cli.
//
// Exit status: 0 success, 1 a check failed, 2 usage error, 3 domain error.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conefourier/verify.hpp"

namespace conefourier {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Everything a suite run depends on. Read from a single JSON document;
/// unknown keys are rejected.
struct RunConfig {
  QuadratureConfig quad;
  std::map<std::string, Grid> grids;
  std::optional<std::vector<std::string>> ids;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 1;
  bool timing = false;
};

/// Throws ParameterError on malformed documents or unknown keys.
RunConfig parse_run_config(const std::string& text);
std::string run_config_to_json(const RunConfig& cfg);

/// "name=value" arguments; values may be comma-separated lists.
ParamMap parse_assignments(const std::vector<std::string>& args);

/// Values of the functions exposed by `eval` and `table`.
Cx evaluate_function(const std::string& name, const ParamMap& params);
const std::vector<std::string>& function_catalog();

/// Mantissa with 15 decimals and a bare exponent, e.g. "1.000000000000000e0".
std::string format_value(double v);
std::string format_value(Cx v);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conefourier
