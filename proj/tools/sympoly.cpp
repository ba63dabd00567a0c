#include "sympoly/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sympoly::run_cli(argc, argv, std::cout, std::cerr); }
