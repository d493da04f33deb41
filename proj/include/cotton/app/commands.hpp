#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cotton/rational.hpp"

namespace cotton::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInputError = 2,
  kExitPrecondition = 3,
};

struct RunConfig {
  std::string command;
  /// Metric spec file (curvature, classify) or tensor spec file (decompose).
  std::string input;
  /// Unset means: the metric file's mode if it has one, else exact.
  std::optional<std::string> mode;
  std::string report = "text";
  std::optional<std::uint64_t> seed;
  /// Float mode only.
  std::optional<double> tolerance;
  /// Each entry is "coord=value,coord=value,...".
  std::vector<std::string> at;
  std::size_t samples = 20;
  /// verify-model: the polynomial a(t).
  std::string a = "0";
  bool allow_skip = false;
  std::string inject_fault;
};

inline constexpr double kDefaultFloatTolerance = 1e-9;

/// Parses "--at" values into points over `coords`; every coordinate must be
/// given exactly once per point.
std::vector<std::vector<Rational>> parse_points(const std::vector<std::string>& at,
                                                const std::vector<std::string>& coords);

/// Runs one command and returns its exit code. Reports go to `out`,
/// diagnostics to `err`.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cotton::app
