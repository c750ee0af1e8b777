#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rolegroup {

// Runs the command-line tool on `args` (without the program name). Returns
// the process exit code; documents go to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rolegroup
