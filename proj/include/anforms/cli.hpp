#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anforms::cli {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Trees not given with
/// --tree are read one per line from `in`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace anforms::cli
