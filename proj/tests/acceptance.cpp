// One PASS/FAIL line per acceptance criterion. A criterion passes when its
// suite passes within the runtime budget. Criterion 16 reruns every suite at
// one worker and compares its output byte for byte with the multi-worker run.
// Exit status is nonzero if any criterion fails.

#include "lmom/suites.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

int main() {
  using namespace lmom;
  constexpr std::size_t kWorkers = 4;
  const SuiteOptions opt;
  std::vector<std::string> outputs;
  bool all = true;
  for (const Suite& s : all_suites()) {
    par::set_thread_count(kWorkers);
    const auto t0 = std::chrono::steady_clock::now();
    bool passed = false;
    outputs.push_back(run_suite_to_string(s, opt, OutputFormat::json_lines, &passed));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < s.budget_seconds;
    const bool ok = passed && in_time;
    all = all && ok;
    std::printf("%s criterion %d (%s.%s): checks %s, %.2f s of %.0f s budget\n", ok ? "PASS" : "FAIL", s.criterion, s.group.c_str(), s.name.c_str(),
                passed ? "pass" : "fail", secs, s.budget_seconds);
    if (!passed) {
      // the failing checks, for the log
      std::istringstream is(outputs.back());
      std::string line;
      while (std::getline(is, line)) {
        if (line.find("\"pass\":false") != std::string::npos) std::printf("  %s\n", line.c_str());
      }
    }
    std::fflush(stdout);
  }
  std::vector<std::string> differing;
  for (std::size_t i = 0; i < all_suites().size(); ++i) {
    par::set_thread_count(1);
    const Suite& s = all_suites()[i];
    if (run_suite_to_string(s, opt, OutputFormat::json_lines) != outputs[i]) differing.push_back(s.group + "." + s.name);
  }
  const bool det = differing.empty();
  all = all && det;
  std::printf("%s criterion 16 (determinism): %zu suites identical at 1 and %zu workers\n", det ? "PASS" : "FAIL",
              all_suites().size() - differing.size(), kWorkers);
  for (const std::string& d : differing) std::printf("  differs: %s\n", d.c_str());
  return all ? 0 : 1;
}
