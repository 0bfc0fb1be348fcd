// Command-line front end: `path`, `time`, `sweep`, `verify`,
// `compare-cycloid`. Exit codes: 0 success, 1 usage error, 2 numeric
// failure, 3 verification failure.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brach {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitVerify = 3;

/// Parses an angle: radians by default, degrees with a `deg` suffix
/// ("90deg"). Throws InvalidArgument on malformed text.
double parse_angle(const std::string& text);

/// Runs the CLI with `args` (without the program name), writing results to
/// `out` unless `--out <file>` redirects them, and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brach
