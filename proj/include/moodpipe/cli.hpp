#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moodpipe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one moodpipe command. `args` excludes the program name. JSON goes
/// to `out` (or the --out file where a command writes one), summaries and
/// errors to `err`. Returns 0, 1 for usage errors or 2 for data errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moodpipe::cli
