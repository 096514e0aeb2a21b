#include <iostream>

#include "burnside/cli.hpp"

int main(int argc, char** argv) { return burnside::cli::run(argc, argv, std::cout, std::cerr); }
