#include "sedscore/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return sedscore::run_cli(argc, argv, std::cout, std::cerr);
}
