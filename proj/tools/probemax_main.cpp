#include <iostream>

#include "probemax/cli.hpp"

int main(int argc, char** argv) { return probemax::run_cli(argc, argv, std::cout, std::cerr); }
