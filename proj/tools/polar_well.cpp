#include <iostream>

#include "polarwell/cli.hpp"

int main(int argc, char** argv) { return polarwell::cli::run(argc, argv, std::cout, std::cerr); }
