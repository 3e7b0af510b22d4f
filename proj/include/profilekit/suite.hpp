#pragma once

#include <string>
#include <vector>

namespace profilekit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // one-line measurement summary or the error that aborted the run
  double seconds = 0.0;
};

// runs one acceptance criterion, 1..11; library errors are caught and reported
// as a failed result rather than thrown; the seed only drives the randomized
// oracle corpus of criterion 1
CriterionResult run_criterion(int id, unsigned seed = 20240801u);

// all criteria in order
std::vector<CriterionResult> run_all(unsigned seed = 20240801u);

}  // namespace profilekit
