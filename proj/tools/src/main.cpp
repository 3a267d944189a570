#include <iostream>
#include <string>
#include <vector>

#include "adqs_tools/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return adqs::cli::run(args, std::cout, std::cerr);
}
