#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmrsa::cli {

// Exit codes: 0 success, 1 operational error, 2 validation findings.

/// Runs one CLI invocation. args is argv-style without the program name.
/// Reports go to out; every diagnostic goes to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dmrsa::cli
