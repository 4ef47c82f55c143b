#include <iostream>
#include <string>
#include <vector>

#include "measext/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return measext::cli::run(args, std::cout, std::cerr);
}
