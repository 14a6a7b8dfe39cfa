#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fluxmodes::cli {

// Dispatches the workbench subcommands. Exit codes: 0 success,
// 1 validation/usage error, 2 a check suite failed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fluxmodes::cli
