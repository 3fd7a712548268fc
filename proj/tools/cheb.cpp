#include "cheb/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cheb::run_cli(argc, argv, std::cout, std::cerr); }
