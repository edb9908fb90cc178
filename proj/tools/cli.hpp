#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lumenbell::cli {

enum ExitCode : int {
    ok = 0,
    usage_error = 2,
    input_error = 3,
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`. Never calls std::exit.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lumenbell::cli
