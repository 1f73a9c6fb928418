#include <iostream>

#include "dualcs/cli.hpp"

int main(int argc, char** argv) { return dualcs::cli::run(argc, argv, std::cout, std::cerr); }
