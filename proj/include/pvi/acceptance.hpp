#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pvi {

struct CriterionResult {
  int id = 0;
  std::string name;
  enum class Status { pass, fail, inconclusive } status = Status::fail;
  std::string detail;  // worst measured quantity against its bound
  double seconds = 0.0;
  double limitSeconds = 0.0;
};

const char* status_name(CriterionResult::Status s);

// Runs the numbered acceptance criteria (1..10; empty = all). Tolerances and
// time limits are fixed in the implementation.
// onResult fires as each criterion finishes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& which = {},
                                            const std::function<void(const CriterionResult&)>& onResult = {});

std::string format_result(const CriterionResult& r);

}  // namespace pvi
