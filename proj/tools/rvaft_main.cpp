#include <iostream>

#include "rvaft/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return rvaft::cli::main(argc, argv, std::cin, std::cout, std::cerr);
}
