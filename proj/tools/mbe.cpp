#include "mbe/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mbe::cli_main(argc, argv, std::cout, std::cerr); }
