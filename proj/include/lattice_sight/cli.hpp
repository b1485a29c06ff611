#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lsight::cli {

// Executes one command (args exclude the program name) and returns the
// process exit code: 0 success, 1 domain error, 2 usage error.  Output
// streams are injected so tests can run commands in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsight::cli
