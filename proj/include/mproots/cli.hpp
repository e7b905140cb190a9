#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mproots::cli {

/// Exit codes: 0 success, 1 usage error, 2 convergence failure (solve),
/// 3 internal numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace mproots::cli
