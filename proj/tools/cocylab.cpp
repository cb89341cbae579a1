#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) { return cocylab::cli::run(argc, argv, std::cout, std::cerr); }
