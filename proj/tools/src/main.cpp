#include <iostream>

#include "lorenz_cli/app.hpp"

int main(int argc, char** argv) { return lorenz::cli::run(argc, argv, std::cout, std::cerr); }
