#pragma once

#include <string>
#include <vector>

namespace dynabench {

/// Entry point of the `dynabench` tool; argv-style arguments without the
/// program name. Exit codes: 0 success, 2 validation error, 3 missing
/// dependency stage.
int run_cli(const std::vector<std::string>& args);

}  // namespace dynabench
