// Acceptance suite runner: one PASS/FAIL line per criterion, nonzero exit
// on any failure. Tolerances are pinned inside the suite itself.

#include <cstdlib>
#include <iostream>
#include <string>

#include "cotton/app/acceptance.hpp"

int main(int argc, char** argv) {
  cotton::app::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--mode" && i + 1 < argc) {
      options.exact = std::string(argv[++i]) != "float";
    } else if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: cotton_acceptance [--mode exact|float] [--seed N]\n";
      return 2;
    }
  }
  std::cout << "acceptance suite, " << (options.exact ? "exact" : "float") << " mode, seed " << options.seed << "\n";
  const auto results = cotton::app::run_acceptance(
      options, [](const cotton::app::CriterionResult& r) { std::cout << cotton::app::format_result_line(r) << std::endl; });
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
