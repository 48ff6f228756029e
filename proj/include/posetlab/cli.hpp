#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posetlab {

// Full command-line surface. `args` excludes the program name. Returns the
// process exit code: 0 success, 1 failed repro criteria, 2 usage or domain
// error, 3 size cap, 4 node cap hit before the optimum was proven (the
// result is still printed, flagged unproven).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace posetlab
