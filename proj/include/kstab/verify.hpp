#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kstab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;
};

inline constexpr int kCriterionCount = 15;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Runs one acceptance criterion (1..15). Each criterion derives its own
/// random stream from (seed, id), so results do not depend on which other
/// criteria run. A criterion passes only if its check holds and it finished
/// within its time budget.
CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed);

/// "[PASS]  3  title (0.12 s / 30 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace kstab
