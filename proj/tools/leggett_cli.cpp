#include <iostream>

#include "leggett/harness.hpp"

int main(int argc, char** argv) { return leggett::run_cli(argc, argv, std::cout, std::cerr); }
