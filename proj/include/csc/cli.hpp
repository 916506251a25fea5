#pragma once

#include <string>
#include <vector>

namespace csc::cli {

/// Entry point used by the csc binary and by the tests.
/// Exit code 0: success; 1: verification failure or runtime error;
/// 2: usage error.
int run(const std::vector<std::string>& args);

}  // namespace csc::cli
