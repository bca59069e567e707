#include "lrotto/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lrotto::cli::main(argc, argv, std::cout, std::cerr); }
