#include <iostream>

#include "qfzeta/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return qfzeta::cli_main({argv + 1, argv + argc}, std::cout, std::cerr);
}
