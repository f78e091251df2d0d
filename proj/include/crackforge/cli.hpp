#pragma once

#include <string>
#include <vector>

namespace crackforge::cli {

enum ExitCode : int
{
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kNonConvergence = 3,
};

/// Entry point of the `crackforge` tool. Subcommands: analyze, stage-split,
/// elongate, translate, evaluate.
int run(int argc, char** argv);

/// Same as above; `args` excludes the program name.
int run(const std::vector<std::string>& args);

} // namespace crackforge::cli
