#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace irr {

// Runs the command line `args` (without the program name). Normal output goes
// to `out` unless --out is given; errors are one line on `err`. Returns the
// process exit status: 0 on success, 10 + error code otherwise.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irr
