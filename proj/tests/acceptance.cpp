#include "kstab/verify.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  int only = 0;
  std::uint64_t seed = kstab::kDefaultSeed;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--only") {
      only = std::atoi(argv[i + 1]);
    } else if (flag == "--seed") {
      seed = std::strtoull(argv[i + 1], nullptr, 10);
    } else {
      std::cerr << "usage: acceptance [--only ID] [--seed N]\n";
      return 2;
    }
  }

  int failed = 0;
  for (int id = 1; id <= kstab::kCriterionCount; ++id) {
    if (only != 0 && id != only) {
      continue;
    }
    const kstab::CriterionResult r = kstab::run_criterion(id, seed);
    std::cout << kstab::format_result(r) << std::endl;
    failed += r.passed ? 0 : 1;
  }
  if (only == 0) {
    std::cout << (kstab::kCriterionCount - failed) << "/" << kstab::kCriterionCount << " criteria passed\n";
  }
  return failed == 0 ? 0 : 1;
}
