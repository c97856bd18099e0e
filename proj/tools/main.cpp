#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vk::cli::main(argc, argv, std::cout, std::cerr); }
