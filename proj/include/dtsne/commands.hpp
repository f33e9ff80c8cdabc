#ifndef DTSNE_COMMANDS_HPP
#define DTSNE_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "dtsne/error.hpp"

namespace dtsne::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kIo = 3,
    kNumerical = 4,
};

int exit_code_for(ErrorCode code);

/**
 * Entry point of the `dtsne` tool. `args` excludes the program name.
 * Subcommands: generate, embed, evaluate, plot.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtsne::cli

#endif
