#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nichols::cli::main(argc, argv, std::cout, std::cerr); }
