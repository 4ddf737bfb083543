#pragma once

#include <string>
#include <vector>

namespace dikin::cli {

// Runs one subcommand.  Returns the process exit status: 0 success,
// 1 numeric failure, 2 usage error.
int run(const std::vector<std::string>& args);

}  // namespace dikin::cli
