#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crowd {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,   ///< parse or validation failure
  kExitRuntime = 2,   ///< non-finite state or I/O failure during a run
  kExitCheckFailed = 3,
};

/// Entry point of the `crowd` tool. `args` excludes the program name.
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace crowd
