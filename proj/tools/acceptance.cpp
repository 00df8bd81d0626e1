// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "pvi/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  bool failed = false;
  pvi::run_acceptance(which, [&](const pvi::CriterionResult& r) {
    std::cout << pvi::format_result(r) << std::endl;
    failed = failed || r.status == pvi::CriterionResult::Status::fail;
  });
  return failed ? 1 : 0;
}
