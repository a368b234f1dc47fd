// One line per acceptance criterion; non-zero exit when any fails.
#include "psifw/checks.hpp"

#include <cstdio>
#include <thread>

int main() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  // criteria 1, 3, 4 and 5 must finish within a second, 6 within a minute
  const double limits[] = {1.0, 60.0, 1.0, 1.0, 1.0, 60.0};
  bool all = true;
  for (const auto& r : psifw::checks::run_all(threads)) {
    bool inTime = r.seconds < limits[r.id - 1];
    bool ok = r.passed && inTime;
    all = all && ok;
    std::printf("criterion %d %s: %s (%.3f s)%s%s\n", r.id, ok ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.empty() ? "" : " ", r.detail.c_str());
    if (!inTime) std::printf("  exceeded time limit of %.0f s\n", limits[r.id - 1]);
  }
  return all ? 0 : 1;
}
