#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace envlab::cli {

// Runs the command line; args exclude the program name. Returns 0 on
// success, 1 when a --check comparison fails, 2 on invalid flags.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct RegressionCase {
    std::string name;
    // Sets detail to a short description of what was observed.
    std::function<bool(std::string& detail)> check;
};

// The known cases run by a bare --check.
std::vector<RegressionCase> regression_cases();

int run_regressions(std::ostream& out);

}  // namespace envlab::cli
