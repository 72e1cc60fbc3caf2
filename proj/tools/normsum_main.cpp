#include <iostream>

#include "normsum/cli.hpp"

int main(int argc, char** argv) {
  return normsum::cli::run(argc, argv, std::cout, std::cerr);
}
