#include <iostream>

#include "qcat/cli.hpp"

int main(int argc, char** argv) { return qcat::cli::run(argc, argv, std::cout, std::cerr); }
