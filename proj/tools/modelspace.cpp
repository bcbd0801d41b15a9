#include "modelspace/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return modelspace::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
