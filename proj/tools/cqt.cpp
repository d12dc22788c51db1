#include <iostream>

#include "cqt/cli.hpp"

int main(int argc, char** argv) { return cqt::run_cli(argc, argv, std::cout, std::cerr); }
