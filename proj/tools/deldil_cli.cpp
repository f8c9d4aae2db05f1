#include <iostream>

#include "deldil/cli.hpp"

int main(int argc, char** argv) { return deldil::cli::run(argc, argv, std::cout, std::cerr); }
