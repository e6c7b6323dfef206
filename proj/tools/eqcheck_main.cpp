#include "eqcheck/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return eqcheck::cli::run(argc, argv, std::cout, std::cerr);
}
