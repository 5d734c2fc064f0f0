#include <iostream>
#include <string>
#include <vector>

#include "ecs/runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ecs::run_command(args, std::cout, std::cerr);
}
