#include <iostream>

#include "darboux/cli.hpp"

int main(int argc, char** argv) { return darboux::cli::run(argc, argv, std::cout, std::cerr); }
