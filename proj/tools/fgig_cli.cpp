#include <iostream>

#include "fgig/cli.hpp"

int main(int argc, char** argv) { return fgig::run_cli(argc, argv, std::cout, std::cerr); }
