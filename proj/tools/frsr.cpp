#include <iostream>

#include "frsr/cli.hpp"

int main(int argc, char** argv) { return frsr::run_cli(argc, argv, std::cout, std::cerr); }
