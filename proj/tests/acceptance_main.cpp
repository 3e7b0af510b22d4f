#include <cstdio>

#include "profilekit/suite.hpp"

// one line per criterion; exit status 0 only if every criterion passes
int main() {
  const auto results = profilekit::run_all();
  int passed = 0;
  double total = 0.0;
  for (const auto& r : results) {
    passed += r.pass ? 1 : 0;
    total += r.seconds;
    std::printf("%s  criterion %2d  %-30s (%6.2fs): %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.detail.c_str());
  }
  std::printf("%d/%d criteria passed in %.1fs\n", passed, static_cast<int>(results.size()), total);
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}
