#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arcmarkov::cli {

enum ExitCode { kPass = 0, kAssertionFailed = 1, kConfigError = 2 };

// args excludes the program name. Results go to `out` (or --output), error
// JSON to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arcmarkov::cli
