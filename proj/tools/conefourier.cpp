#include <iostream>

#include "conefourier/cli.hpp"

int main(int argc, char** argv) { return conefourier::run_cli(argc, argv, std::cout, std::cerr); }
