#pragma once

#include <string>
#include <vector>

namespace pkgopt::cli {

/// Exit codes: 0 success, 1 usage error, 2 data error, 3 budget infeasible
/// or equivalence verdict false.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without program name

}  // namespace pkgopt::cli
