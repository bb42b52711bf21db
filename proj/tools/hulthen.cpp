#include "hulthen/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return hulthen::cli::run_cli(argc, argv, std::cout, std::cerr);
}
