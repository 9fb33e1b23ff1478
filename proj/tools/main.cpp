#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return binomcoll::cli::run(args, std::cout, std::cerr);
}
