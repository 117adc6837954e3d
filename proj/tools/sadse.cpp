#include <iostream>

#include "sadse/cli.hpp"

int main(int argc, char** argv) {
  return sadse::cli::run(argc, argv, std::cout, std::cerr);
}
