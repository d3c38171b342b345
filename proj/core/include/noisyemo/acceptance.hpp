#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace noisyemo {

enum class Profile { quick, paper_n10, paper_n30, full };

Profile profile_from_string(const std::string& text);
std::string to_string(Profile p);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  int workers = 0;  // 0: hardware concurrency
  std::uint64_t seed = 20140101;
  std::ostream* log = nullptr;
};

/// Criteria checked by a profile: quick {1,2,3,4,6}, paper-n10 {5,7,8},
/// paper-n30 {9}, full: all.
std::vector<int> criteria_for(Profile profile);

CriterionResult run_criterion(int id, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(Profile profile, const AcceptanceOptions& options);

/// "PASS [3] name: detail" / "FAIL [3] name: detail".
std::string format_result(const CriterionResult& result);

}  // namespace noisyemo
