#include <iostream>

#include "lufact/cli.hpp"

int main(int argc, char** argv) { return lufact::cli::run(argc, argv, std::cout, std::cerr); }
