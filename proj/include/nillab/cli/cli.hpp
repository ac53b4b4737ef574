#pragma once

#include <ostream>

namespace nillab {

/// Entry point of the `nillab` tool. Exit codes: 0 success, 1 validation
/// error, 2 acceptance failure (verify).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nillab
