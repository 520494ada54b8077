#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphlim::cli {

// Runs one graphlim command line. Returns the process exit code: 0 on
// success, 1 on invalid input (including bad flags), 2 on an internal
// invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphlim::cli
