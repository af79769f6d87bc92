#pragma once

#include <string>
#include <vector>

namespace singlet::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int criterion_count = 15;

// 15 reruns 1..14 and times the whole suite
CriterionResult run_criterion(int id);
// criteria 1..14 in parallel, then 15 from the measured wall time
std::vector<CriterionResult> run_all();

std::string format_line(const CriterionResult& r);

}  // namespace singlet::acceptance
