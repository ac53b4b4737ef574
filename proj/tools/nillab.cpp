#include "nillab/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nillab::run_cli(argc, argv, std::cout, std::cerr); }
