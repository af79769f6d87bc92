#include <iostream>

#include "singlet/cli.hpp"

int main(int argc, char** argv) { return singlet::cli::run(argc, argv, std::cout, std::cerr); }
