#include <iostream>

#include "rainbow/cli.hpp"

int main(int argc, char** argv) { return rainbow::run_cli(argc, argv, std::cout, std::cerr); }
