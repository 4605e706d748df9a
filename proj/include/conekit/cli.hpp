#pragma once

#include <iosfwd>

namespace conekit {

// Full command-line entry point; returns the process exit code.
// 0 success, 1 infeasible/unbounded, 2 usage or input-format error,
// 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conekit
