#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsmooth::cli {

/// Runs the command line `args` (without the program name).
/// Returns 0 on success, 1 on numerical failure, 2 on validation failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsmooth::cli
