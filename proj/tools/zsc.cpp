#include <iostream>

#include "zsc/cli.hpp"

int main(int argc, char** argv) { return zsc::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
