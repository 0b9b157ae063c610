#include <iostream>
#include <string>
#include <vector>

#include "jastit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return jastit::run(args, std::cout, std::cerr);
}
