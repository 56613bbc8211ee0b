#include <iostream>

#include "hetnet/commands.hpp"

int main(int argc, char** argv) { return hetnet::cli_main(argc, argv, std::cout, std::cerr); }
