#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gorbit::cli {

/// Runs one command (args exclude the program name). Returns 0 when a result
/// was computed, 1 for invalid input, 2 for numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "name=start:stop:count" or "name=v1,v2,...".
std::pair<std::string, std::vector<double>> parse_grid(const std::string& text);

}  // namespace gorbit::cli
