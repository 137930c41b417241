#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "cshv/acceptance.hpp"

// Usage: acceptance [criterion] [seed]. Without a criterion all nine run.
int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 0;
  bool ok = true;
  for (int id = 1; id <= 9; ++id) {
    if (only && id != only) continue;
    const auto r = cshv::acceptance::run_criterion(id, seed);
    std::cout << cshv::acceptance::format_line(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
