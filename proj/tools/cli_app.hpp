#pragma once

#include <ostream>

namespace varlp::cli {

// Full command-line front end, callable in-process for tests.  argv follows
// main() conventions (argv[0] is the program name).  Returns the process
// exit status: 0 success, 1 property-suite failure or internal error,
// 2 validation error, 3 search/iteration budget exceeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace varlp::cli
