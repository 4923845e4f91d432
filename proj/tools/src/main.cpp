#include <iostream>

#include "rotlab/cli/suites.hpp"

int main(int argc, char** argv) { return rotlab::cli::run(argc, argv, std::cout, std::cerr); }
