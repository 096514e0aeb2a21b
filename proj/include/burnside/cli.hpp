#pragma once

#include <ostream>

namespace burnside::cli {

enum ExitCode : int {
    ok = 0,
    verification_failed = 1,
    usage_error = 2,
    input_error = 3,
    resource_limit = 4,
};

/// Parses argv, runs one subcommand and returns its exit code. CSV goes to --out when
/// given and to `out` otherwise; the one-line summary goes to `out` when --out is given
/// and to `err` otherwise, so stdout stays a clean CSV stream.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace burnside::cli
