#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace itres::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 2 on invalid input (message on err), 1 when a self test fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itres::cli
