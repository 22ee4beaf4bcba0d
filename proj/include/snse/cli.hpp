#pragma once

#include <string>
#include <vector>

namespace snse::cli {

// Full command-line entry point (args exclude the program name). Returns
// the process exit code: 0 when every operation succeeded and every
// requested check passed, nonzero otherwise.
int run(const std::vector<std::string>& args);

}  // namespace snse::cli
