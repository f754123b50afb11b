#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bicat::cli {

// Runs one `bicat` command line (without the program name). Exit codes:
// 0 success, 1 a check failed, 2 malformed input or usage. Reports go to
// out as JSON; the first offending location goes to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bicat::cli
