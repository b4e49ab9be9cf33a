#include "skeletree/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return skeletree::run_cli(argc, argv, std::cout, std::cerr); }
