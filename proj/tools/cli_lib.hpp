#pragma once

#include <iosfwd>

namespace pinfloer::cli {

/// Parses argv and dispatches to a subcommand, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code: 0 on success, 1 when
/// a computation fails or a verification finds violations, 2 on bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pinfloer::cli
