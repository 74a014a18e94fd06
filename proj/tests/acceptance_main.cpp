#include <cstdio>

#include "scl/acceptance.hpp"

int main() {
  bool all = true;
  scl::run_acceptance({}, [&](const scl::CriterionResult& r) {
    std::printf("%s\n", scl::format_result(r).c_str());
    std::fflush(stdout);
    all = all && r.passed;
  });
  return all ? 0 : 1;
}
