#pragma once

// Command-line dispatcher. `run` parses argv, calls the library and writes
// the serialized result; it returns the process exit status.

#include <iosfwd>
#include <string>
#include <vector>

namespace entrocone::cli {

// 0 on success, 2 when `verify` finds the outer cone is not tight, 1 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entrocone::cli
