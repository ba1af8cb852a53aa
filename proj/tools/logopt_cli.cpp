#include <iostream>

#include "logopt/cli.hpp"

int main(int argc, char** argv) { return logopt::run_cli(argc, argv, std::cout, std::cerr); }
