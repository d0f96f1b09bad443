#ifndef RESNET_TOOLS_COMMANDS_HPP
#define RESNET_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace resnet::cli {

inline constexpr const char* kToolVersion = "1.0.0";
/// Bumped whenever a CSV column set or order changes.
inline constexpr int kCsvSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

/// Runs the command line `args` (without the program name). Tables go to
/// `out`; diagnostics and the run manifest go to `err` unless --manifest
/// names a file. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace resnet::cli

#endif
