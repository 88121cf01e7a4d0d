#include "enantiosim/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return enantiosim::run_cli(argc, argv, std::cout, std::cerr); }
