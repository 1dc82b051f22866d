#include <iostream>

#include "asep/cli.hpp"

int main(int argc, char** argv) { return asep::cli::main_entry(argc, argv, std::cout, std::cerr); }
