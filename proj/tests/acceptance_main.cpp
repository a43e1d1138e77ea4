// Runs the acceptance criteria and prints one line per criterion.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "charges/verify.hpp"

int main(int argc, char** argv) {
  charges::VerifyOptions options;
  if (argc > 1) options.tolerance_scale = std::strtod(argv[1], nullptr);
  const auto results = charges::run_acceptance(options);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%-5s %s  %s (%.2f s)\n", r.id.c_str(), r.pass() ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    for (const auto& c : r.checks) {
      if (c.pass) continue;
      std::printf("        failed: %s: %.6g %s %.6g%s%s\n", c.name.c_str(), c.value, c.relation.c_str(), c.threshold,
                  c.detail.empty() ? "" : "  ", c.detail.c_str());
    }
    failed += r.pass() ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
