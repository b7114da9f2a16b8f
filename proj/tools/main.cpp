#include "optokerr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return optokerr::run_cli(argc, argv, std::cout, std::cerr);
}
