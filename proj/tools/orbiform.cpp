#include <iostream>

#include "orbiform/cli.hpp"

int main(int argc, char** argv) { return orbiform::run_cli(argc, argv, std::cout, std::cerr); }
