#include <iostream>

#include "kahyp/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return kahyp::run_cli(args, std::cout, std::cerr);
}
