#pragma once

#include <iosfwd>

namespace mnconvex::cli {

// Runs the command line given by argv (argv[0] is the program name); results
// go to `out`, diagnostics to `err`. Identical argv (including --seed)
// produces byte-identical `out`.
//
// Exit codes: 0 all inequalities held; 1 at least one counterexample;
// 2 preconditions unmet or an inequality fully inconclusive; 64 usage error;
// 65 input/parse error; 70 internal numeric failure. When several apply the
// precedence is 70, then 1, then 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mnconvex::cli
