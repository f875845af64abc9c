#include <iostream>
#include <string>
#include <vector>

#include "eqsurf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eqsurf::run(args, std::cout, std::cerr);
}
