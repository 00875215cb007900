#include <iostream>

#include "fqlab/cli.hpp"

int main(int argc, char** argv) { return fqlab::run(argc, argv, std::cout, std::cerr); }
