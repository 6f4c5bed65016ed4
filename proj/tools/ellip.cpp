#include <iostream>

#include "ellip/cli.hpp"

int main(int argc, char** argv) { return ellip::cli_main(argc, argv, std::cout, std::cerr); }
