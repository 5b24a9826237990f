#include <iostream>
#include <string>
#include <vector>

#include "dwt97/cli.hpp"

int main(int argc, char** argv) {
    return dwt97::cli::main_entry(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
