#include <iostream>

#include "qdet/cli.hpp"

int main(int argc, char** argv) { return qdet::cli::run(argc, argv, std::cout, std::cerr); }
