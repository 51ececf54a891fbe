// Acceptance runner: prints one PASS/FAIL line per criterion.
// Usage: zipsections_acceptance [criterion-id] [--seed N]

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "zipsections/acceptance.hpp"

int main(int argc, char** argv) {
  zipsections::u64 seed = 2026;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      only = std::atoi(argv[i]);
      if (only < 1 || only > 12) {
        std::fprintf(stderr, "usage: %s [criterion-id 1..12] [--seed N]\n", argv[0]);
        return 2;
      }
    }
  }
  bool all = true;
  for (int id = 1; id <= 12; ++id) {
    if (only && id != only) continue;
    zipsections::CriterionResult r = zipsections::run_criterion(id, seed);
    std::printf("criterion %2d (%s): %s - %s\n", id, zipsections::criterion_name(id),
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
