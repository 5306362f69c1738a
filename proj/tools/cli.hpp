#pragma once

#include <iosfwd>

namespace kvassoc::cli {

// exit codes: 0 all checks pass or are skipped, 1 a check failed or the solver
// gave up, 2 usage or I/O error
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kvassoc::cli
