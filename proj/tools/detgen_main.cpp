#include <iostream>

#include "ndgen/cli.hpp"

int main(int argc, char** argv) {
    return ndgen::cli::run_detgen(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
