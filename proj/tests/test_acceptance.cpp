// Integration gate: runs the ten-criterion verification battery and prints
// one pass/fail line per criterion. Exit status is 0 when every criterion
// passes outright or fails only in a clause waived as a documented
// finite-size limitation (the failure still prints as FAIL).
//
// Set SP4_ACCEPT_SLOW=1 to include the long L=12 zero scan.

#include <cstdlib>
#include <iostream>

#include "sp4/acceptance.hpp"

int main() {
  sp4::AcceptanceOptions opt;
  const char* slow = std::getenv("SP4_ACCEPT_SLOW");
  opt.include_slow = slow != nullptr && slow[0] == '1';
  opt.live = &std::cout;

  const std::vector<sp4::CriterionResult> results = sp4::run_acceptance(opt);

  int passed = 0, waived = 0, failed = 0;
  for (const sp4::CriterionResult& r : results) {
    if (r.pass)
      ++passed;
    else if (r.waived)
      ++waived;
    else
      ++failed;
  }
  std::cout << "acceptance summary: " << passed << " passed, " << failed + waived
            << " failed (" << waived << " waived as documented)" << std::endl;
  return sp4::acceptance_ok(results) ? 0 : 1;
}
