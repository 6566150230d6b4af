#pragma once
// End-to-end verification battery: ten numbered checks covering every module,
// each with pinned tolerances, reported one line per check. Intended to run
// as an integration test and behind the command-line `selftest` subcommand.

#include <iosfwd>
#include <string>
#include <vector>

namespace sp4 {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  // A failure that is understood and documented (finite-size effect with the
  // extrapolation analysis in `detail`). Reported as FAIL, but it does not
  // make the whole run unacceptable. Never set for unexplained failures.
  bool waived = false;
  double seconds = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  // Also run the long L = 12 zero scan (hours); off by default.
  bool include_slow = false;
  // When set, each result line is streamed here as soon as it is known.
  std::ostream* live = nullptr;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

// True when every criterion either passes or fails only in a waived clause.
bool acceptance_ok(const std::vector<CriterionResult>& results);

// One line per criterion:  [PASS|FAIL] criterion N: name (T s) — detail
void write_acceptance_report(std::ostream& os,
                             const std::vector<CriterionResult>& results);

std::string format_criterion_line(const CriterionResult& r);

}  // namespace sp4
