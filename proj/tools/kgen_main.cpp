#include <iostream>
#include <string>
#include <vector>

#include "kgen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kgen::cli::run(args, std::cout, std::cerr);
}
