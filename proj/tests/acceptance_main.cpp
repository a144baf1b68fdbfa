// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstdlib>
#include <iostream>

#include "fpptree/acceptance.hpp"

int main(int argc, char** argv) {
  fpptree::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.insert(std::atoi(argv[i]));
  options.on_result = [](const fpptree::CriterionResult& r) {
    std::cout << fpptree::format_result_line(r) << std::endl;
  };
  int failed = 0;
  for (const auto& r : fpptree::run_acceptance(options)) failed += !r.pass;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
