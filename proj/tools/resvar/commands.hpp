#pragma once

#include <exception>
#include <string>

namespace resvar::app {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadInput = 2,
  kDomain = 3,
  kNumerical = 4,
};

/// Maps a library exception to an exit code.
int exit_code_for(const std::exception& e);

/// `error[code]: message` on a single line.
std::string diagnostic(int code, const std::string& message);

/// Entry point of the `resvar` tool.
int run_cli(int argc, char** argv);

}  // namespace resvar::app
