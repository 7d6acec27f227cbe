#include <iostream>

#include "augcat/cli.hpp"

int main(int argc, char** argv) { return augcat::run_cli(argc, argv, std::cout, std::cerr); }
