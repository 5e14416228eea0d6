// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance [criterion ids...]
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "nvfix/error.hpp"
#include "nvfix_cli/run.hpp"

int main(int argc, char **argv) {
  std::vector<int> ids;
  for (int k = 1; k < argc; ++k)
    ids.push_back(std::atoi(argv[k]));
  if (ids.empty())
    for (int k = 1; k <= nvfix::cli::kCriterionCount; ++k)
      ids.push_back(k);

  int failed = 0;
  for (int id : ids) {
    try {
      const auto r = nvfix::cli::run_criterion(id);
      std::printf("%s [%d] %s (%.1fs)\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                  r.seconds);
      for (const auto &c : r.checks)
        if (!c.pass)
          std::printf("    failed: %s: %s\n", c.name.c_str(), c.detail.c_str());
      failed += r.pass() ? 0 : 1;
    } catch (const nvfix::Error &e) {
      std::printf("FAIL [%d] %s\n", id, e.what());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
  return failed == 0 ? 0 : 1;
}
