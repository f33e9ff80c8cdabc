#include <iostream>
#include <string>
#include <vector>

#include "dtsne/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dtsne::cli::run(args, std::cout, std::cerr);
}
