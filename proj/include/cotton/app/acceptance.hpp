#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cotton::app {

inline constexpr std::uint64_t kDefaultAcceptanceSeed = 20240917;

struct AcceptanceOptions {
  /// Exact rational pipeline, or the double pipeline with the float tolerances.
  bool exact = true;
  std::uint64_t seed = kDefaultAcceptanceSeed;
  /// Test hook: name of an internal fixture to corrupt (see acceptance_faults).
  std::string fault;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Fixture corruptions understood by the fault hook.
const std::vector<std::string>& acceptance_faults();

/// Runs the twelve acceptance criteria in order. `on_result` sees each
/// result as soon as it is known.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS]  3  Parallelism  (0.41 s)  detail"
std::string format_result_line(const CriterionResult& r);

}  // namespace cotton::app
