#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fluxmodes::cli {

struct CheckOptions {
  double tol_scale = 1.0;
  int quad_points = 64;
};

std::vector<std::string> all_check_suites();
bool known_check_suite(const std::string& suite);

// Runs one suite (or "all"), printing one line per assertion.
// Returns the number of failed assertions.
int run_check_suite(const std::string& suite, const CheckOptions& options,
                    std::ostream& out);

}  // namespace fluxmodes::cli
