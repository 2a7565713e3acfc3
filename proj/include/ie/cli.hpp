#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ie::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 on success, 2 when the result is undecided, 1 on any error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ie::cli
