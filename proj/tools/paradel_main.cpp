#include <iostream>
#include <string>
#include <vector>

#include "paradel/cli.h"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    std::vector<std::string> args(argv, argv + argc);
    return paradel::cli::run(args, std::cin, std::cout, std::cerr);
}
