#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idr::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_internal_error = 2;

/// Runs one subcommand. `args` excludes the program name. Data goes to the files named
/// by `--out`; diagnostics go to `err`, short summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace idr::cli
