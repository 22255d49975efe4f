#include <iostream>

#include "maxzonoid/cli.hpp"

int main(int argc, char** argv) { return maxzonoid::cli::run(argc, argv, std::cout, std::cerr); }
