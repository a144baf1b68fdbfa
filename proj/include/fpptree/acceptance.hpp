#pragma once

#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace fpptree {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  // Divides Monte Carlo trial counts; thresholds are unchanged. 1 is the full suite.
  unsigned scale_down = 1;
  std::set<int> only;  // empty means every criterion
  std::filesystem::path scratch_dir;  // for determinism outputs; a temp dir when empty
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

// "[PASS] 3 cover-time bound (12.3s): detail"
std::string format_result_line(const CriterionResult& r);

}  // namespace fpptree
