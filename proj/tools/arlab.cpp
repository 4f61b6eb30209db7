#include <iostream>

#include "arlab/harness.hpp"

int main(int argc, char** argv) { return arlab::harness::run_cli(argc, argv, std::cout, std::cerr); }
