#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dendro::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flat `key = value` lines; '#' starts a comment. Keys are long option
/// names without the dashes. Throws std::invalid_argument on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

}  // namespace dendro::cli
