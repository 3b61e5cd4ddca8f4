#pragma once

// The reference instance shipped in fixtures/example_s2.mbe, embedded at
// build time so tests and the CLI self-test do not depend on the working
// directory.

#include "mbe/io.hpp"

#include <string_view>

namespace mbe {

std::string_view example_s2_text();
Instance example_s2();

}  // namespace mbe
