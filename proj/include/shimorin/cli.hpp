#pragma once

#include <ostream>

namespace shimorin {

/// Runs the command-line front end. Exit codes: 0 success, 1 a verified bound
/// failed, 2 invalid configuration.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shimorin
