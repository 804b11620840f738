#include <iostream>

#include "simpsonbound/cli.hpp"

int main(int argc, char** argv) { return simpsonbound::cli_main(argc, argv, std::cout, std::cerr); }
