#include "citerank/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return citerank::run_cli(argc, argv, std::cout, std::cerr);
}
