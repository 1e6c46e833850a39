#include <iostream>
#include <string>
#include <vector>

#include "f2gan/pipeline/commands.hpp"

int main(int argc, char** argv) {
    return f2gan::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
