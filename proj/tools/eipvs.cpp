#include "eipvs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return eipvs::cli_dispatch(argc, argv, std::cout, std::cerr); }
