#include "peri_couple/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return peri_couple::cli::run(argc, argv, std::cout, std::cerr);
}
