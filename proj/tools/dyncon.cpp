#include <iostream>

#include "dyncon/cli.hpp"

int main(int argc, char** argv) { return dyncon::cli_main(argc, argv, std::cout, std::cerr); }
