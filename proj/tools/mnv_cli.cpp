#include <iostream>

#include "mnv/cli.hpp"

int main(int argc, char** argv)
{
    return mnv::cli::run(argc, argv, std::cout, std::cerr);
}
