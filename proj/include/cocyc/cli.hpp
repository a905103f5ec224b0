#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cocyc {

/// The `cocyc` command line, minus the program name. Returns the exit code:
/// 0 pass, 1 check failure, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cocyc
