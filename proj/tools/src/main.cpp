#include <iostream>

#include "sperner/cli/app.hpp"

int main(int argc, char** argv) { return sperner::cli::run(argc, argv, std::cout, std::cerr); }
