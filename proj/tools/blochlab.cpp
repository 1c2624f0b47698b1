#include <iostream>
#include <string>
#include <vector>

#include "blochlab/cli.hpp"

int main(int argc, char** argv) {
    return blochlab::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
