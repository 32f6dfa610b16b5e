#pragma once

#include <iosfwd>

namespace faultnet {

// Entry point of the faultnet binary. Returns the process exit code:
// 0 success, 2 config, 3 coverage, 4 compatibility, 5 input schema, 1 other.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace faultnet
