// One line per acceptance criterion; exits nonzero if any criterion fails.

#include "corruga/verification.hpp"

#include <chrono>
#include <iostream>

using namespace corruga;

int main() {
  VerificationContext ctx;
  int failed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int id : suite_criteria("all")) {
    CriterionResult r;
    try {
      r = run_criterion(id, ctx);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), {}};
    }
    failed += !r.passed;
    std::cout << format_line(r) << std::endl;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (failed ? "FAILED " : "PASSED ") << 13 - failed << "/13 criteria in " << secs << " s"
            << std::endl;
  return failed ? 1 : 0;
}
