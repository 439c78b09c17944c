#include <iostream>

#include "qwheel/cli.hpp"

int main(int argc, char** argv) { return qwheel::cli::run(argc, argv, std::cout, std::cerr); }
