#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kuperberg {

/// Runs one command-line invocation; `args` excludes the program name.
/// Returns 0 on success, 1 when a verification fails, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kuperberg
