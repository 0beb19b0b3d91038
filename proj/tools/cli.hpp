#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace uavlink::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;     // bad arguments, config, or input files
inline constexpr int kExitInternalError = 2;  // failure inside the simulation itself

/// Runs the `uavlink` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uavlink::cli
