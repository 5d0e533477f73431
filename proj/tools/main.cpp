#include <iostream>

#include "expost/cli.hpp"

int main(int argc, char** argv) { return expost::run_cli(argc, argv, std::cout, std::cerr); }
