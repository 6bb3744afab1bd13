#include "ptg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ptg::run_cli(argc, argv, std::cout, std::cerr); }
