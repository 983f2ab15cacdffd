#include <iostream>
#include <string>
#include <vector>

#include "charlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return charlab::cli::run(args, std::cout, std::cerr);
}
