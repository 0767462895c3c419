#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paradel::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInputFormat = 2,
    kGeneralPosition = 3,
    kVerificationFailure = 4,
};

/// Runs one command. `args[0]` is the program name. Standard input is read
/// from `in` when no --input path (or "-") is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace paradel::cli
