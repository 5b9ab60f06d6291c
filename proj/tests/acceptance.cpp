// Acceptance gate: runs every verification check and prints one line per
// criterion. Exits nonzero if any check fails.

#include <cstdio>

#include "weberbox/verify.hpp"

int main() {
  const auto results = weberbox::run_acceptance(false);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-42s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    all_pass = all_pass && r.pass;
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria pass"
                               : "ACCEPTANCE: FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
