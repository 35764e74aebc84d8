#include "radial/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return radial::run_cli(argc, argv, std::cout, std::cerr);
}
