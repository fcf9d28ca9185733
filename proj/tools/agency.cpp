#include <iostream>

#include "agency/cli.hpp"

int main(int argc, char** argv) { return agency::cli::main(argc, argv, std::cout, std::cerr); }
