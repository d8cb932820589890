#include <iostream>
#include <string>
#include <vector>

#include "aggsim/cli.hpp"

int main(int argc, char** argv) {
    return aggsim::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
