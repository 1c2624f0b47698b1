#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blochlab {

/// Runs the command-line interface; args excludes the program name.
/// Exit codes: 0 success, 1 failed checks or per-case errors, 2 usage,
/// parse or configuration errors. Errors go to `err` as
/// "blochlab: error: <kind>: <message>".
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blochlab
