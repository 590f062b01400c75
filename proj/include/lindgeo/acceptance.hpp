#pragma once

// End-to-end acceptance checks, shared by the acceptance test binary and
// `lindgeo verify`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lindgeo {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool gating = true;
  std::vector<std::string> details;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240917;
  unsigned threads = 0;
  std::vector<int> only;  // empty: all criteria
};

constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Runs the selected criteria in order, calling `on_result` after each.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 title (1.2 s)" followed by indented detail lines.
std::string format_result(const CriterionResult& r);

/// True when every gating criterion passed.
bool all_gating_passed(const std::vector<CriterionResult>& results);

}  // namespace lindgeo
