#include <iostream>

#include "decrsp/cli.hpp"

int main(int argc, char** argv) { return decrsp::run_cli(argc, argv, std::cout, std::cerr); }
