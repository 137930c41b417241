#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cshv::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  /// Wall-clock budget; 0 means none. Exceeding it fails the criterion.
  double budget = 0;
};

CriterionResult pushforward_shape(std::uint64_t seed);
CriterionResult resolution_soundness(std::uint64_t seed);
CriterionResult recollement_exactness(std::uint64_t seed);
CriterionResult projection_and_base_change(std::uint64_t seed);
CriterionResult homology_invariance(std::uint64_t seed);
CriterionResult closed_image_certificates(std::uint64_t seed);
CriterionResult poincare_numerics(std::uint64_t seed);
CriterionResult global_crosscheck(std::uint64_t seed);
CriterionResult stratification_suite(std::uint64_t seed);

/// Criterion `id` in 1..9.
CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_all(std::uint64_t seed);

/// "[PASS] 3 recollement exactness (1.20 s): detail".
std::string format_line(const CriterionResult& r);

}  // namespace cshv::acceptance
