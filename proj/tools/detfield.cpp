#include <iostream>

#include "detfield/cli.hpp"

int main(int argc, char** argv) { return detfield::cli::main(argc, argv, std::cout, std::cerr); }
