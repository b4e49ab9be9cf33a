#pragma once

#include <iosfwd>

namespace skeletree {

/// Exit codes: 0 success, 1 valid input without a solution, 2 invalid input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace skeletree
