#include <iostream>

#include "dichogen/cli.hpp"

int main(int argc, char** argv) { return dichogen::cli::run_cli(argc, argv, std::cout, std::cerr); }
