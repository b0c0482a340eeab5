#include <iostream>

#include "sketchlab/cli/cli.hpp"

int main(int argc, char** argv) { return sketchlab::run_cli(argc, argv, std::cout, std::cerr); }
