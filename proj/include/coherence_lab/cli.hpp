#pragma once

#include <iosfwd>

namespace coherence_lab {

/// Runs the command-line front end. Results go to out (JSON by default, CSV
/// with --format csv), diagnostics to err. Returns 0 on success, 2 on a
/// validation error and 1 on a computational error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coherence_lab
