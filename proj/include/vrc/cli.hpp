#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vrc {

/// Runs the command line; args[0] is the program name. Returns the exit code:
/// 0 when a result (including UNKNOWN) was produced, 2 on invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vrc
