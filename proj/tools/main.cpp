#include "shimorin/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return shimorin::run_cli(argc, argv, std::cout, std::cerr); }
