#pragma once

#include <iosfwd>

#include "d2dsim/config.hpp"

namespace d2dsim {

/// Executes config.command and returns the process exit status: 0 on
/// success, 1 for configuration problems, 2 for runtime failures. Normal
/// reporting goes to out, diagnostics to err; no exceptions escape.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace d2dsim
