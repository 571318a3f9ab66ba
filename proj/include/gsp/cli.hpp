#pragma once

#include <string>
#include <vector>

namespace gsp::cli {

// Stable exit codes for scripting.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kParse = 3,
    kNumerical = 4,
    kIo = 5,
};

// Full CLI entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace gsp::cli
