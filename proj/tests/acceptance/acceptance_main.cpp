// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstdio>
#include <exception>
#include <iostream>

#include "leechps/cli/suites.hpp"

int main() {
  using namespace leechps::cli;
  SuiteContext ctx;
  ctx.log = &std::cerr;
  int failed = 0;
  int index = 0;
  for (const auto& s : suites()) {
    ++index;
    CheckResult r;
    try {
      r = run_suite(s.name, ctx);
    } catch (const std::exception& e) {
      r.name = s.name;
      r.pass = false;
      r.summary = std::string("exception: ") + e.what();
    }
    failed += r.pass ? 0 : 1;
    std::printf("criterion %2d %-10s %s  %s (%.1fs)\n", index, s.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.summary.c_str(), r.seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
