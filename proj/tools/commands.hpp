#pragma once

#include <string>
#include <vector>

namespace symtoda::cli {

/// Parses arguments, runs the subcommand and returns the process exit code:
/// 0 success, 1 verification or degeneracy failure, 2 input error.
int run(int argc, char** argv);

}  // namespace symtoda::cli
