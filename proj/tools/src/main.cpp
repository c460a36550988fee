#include "superlie_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return superlie::cli::main_entry(argc, argv, std::cout, std::cerr); }
