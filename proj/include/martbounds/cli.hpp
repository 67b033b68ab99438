#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace martbounds::cli {

/// Runs one subcommand. Exit codes: 0 success, 1 verify found violations,
/// 2 domain/resource errors (error JSON on stdout), 64 usage errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, char** argv);

}  // namespace martbounds::cli
