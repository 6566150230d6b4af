#pragma once
// Command-line front end. Kept out of main() so tests can drive it
// in-process with captured streams.
//
// Exit codes: 0 — success / all requested checks within tolerance;
//             1 — a check failed or a computation error occurred
//                 (a machine-readable failure list is part of the output);
//             2 — usage error (bad flags, malformed values, L over the cap).

#include <iosfwd>

namespace sp4::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sp4::cli
