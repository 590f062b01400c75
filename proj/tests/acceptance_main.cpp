#include "lindgeo/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  lindgeo::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));
  const auto results = lindgeo::run_acceptance(options, [](const lindgeo::CriterionResult& r) {
    std::fputs(lindgeo::format_result(r).c_str(), stdout);
    std::fflush(stdout);
  });
  int passed = 0;
  int gating_failures = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    gating_failures += (r.passed || !r.gating) ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed, %d gating failure(s)\n", passed, results.size(), gating_failures);
  return lindgeo::all_gating_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
