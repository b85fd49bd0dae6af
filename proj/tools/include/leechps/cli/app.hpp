#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace leechps::cli {

inline constexpr int kSchemaVersion = 1;

// Parses args (without the program name), runs the command, writes the result
// envelope to out and logs to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leechps::cli
