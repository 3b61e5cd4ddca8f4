#pragma once

#include <iosfwd>

namespace mbe {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitUsage = 2,
    kExitInvariant = 3,
};

/// Entry point of the `mbe` tool. Results go to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mbe
