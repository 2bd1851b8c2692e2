#include <iostream>
#include <string>
#include <vector>

#include "q2mono/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return q2mono::run_cli(args, std::cout, std::cerr);
}
