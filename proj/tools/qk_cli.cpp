#include <iostream>

#include "runner.hpp"

int main(int argc, char** argv) { return qk::cli::run_cli(argc, argv, std::cout, std::cerr); }
