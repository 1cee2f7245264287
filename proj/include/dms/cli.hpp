#pragma once

#include <string>
#include <vector>

namespace dms {

// Runs the command-line interface on the given arguments (program name not
// included). Exit codes: 0 success, 2 input data error, 3 calibration error,
// 4 configuration or usage error.
int run_cli(const std::vector<std::string>& args);

} // namespace dms
