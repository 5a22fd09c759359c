#include <iostream>

#include "rdelta/cli.hpp"

int main(int argc, char** argv) { return rdelta::cli::run(argc, argv, std::cout, std::cerr); }
