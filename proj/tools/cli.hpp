#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cds::cli {

enum ExitCode { kOk = 0, kPropertyFailed = 1, kInputError = 2, kCapExceeded = 3 };

/// Runs one command line (args[0] is the program name). Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cds::cli
