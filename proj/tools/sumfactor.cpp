#include <iostream>
#include <string>
#include <vector>

#include "sumfactor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sumfactor::cli::run(args, std::cout, std::cerr);
}
