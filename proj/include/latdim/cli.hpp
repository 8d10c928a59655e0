#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latdim::cli {

/// Dispatch one command-line invocation (arguments without the program
/// name). Payload goes to `out`, diagnostics to `err`.
/// Exit code 0: success; 1: verification or assertion failure;
/// 2: usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace latdim::cli
