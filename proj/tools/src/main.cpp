#include <iostream>

#include "bidisk/cli.hpp"

int main(int argc, char** argv) { return bidisk::cli::dispatch(argc, argv, std::cout, std::cerr); }
