#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv)
{
    return gv::cli::run(argc, argv, std::cout);
}
