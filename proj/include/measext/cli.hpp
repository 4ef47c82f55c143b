#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace measext::cli {

/// Exit codes: 0 success or a true verdict, 1 a checked-false verdict,
/// 2 malformed input.
enum ExitCode : int { kOk = 0, kFalse = 1, kInputError = 2 };

/// Runs one verb. `args` excludes the program name. Canonical JSON goes to
/// `out` (or to the --out file); usage text goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace measext::cli
