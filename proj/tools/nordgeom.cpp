#include <iostream>

#include "nordgeom/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nordgeom::run_cli(args, std::cout, std::cerr);
}
