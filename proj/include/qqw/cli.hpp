#pragma once

#include <string>
#include <vector>

namespace qqw {

// Batch experiment driver. Exit codes: 0 success, 2 validation/usage error,
// 3 acceptance-check failure under --check.
int cli_run(const std::vector<std::string>& args);

}  // namespace qqw
