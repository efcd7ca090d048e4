#include <iostream>
#include <string>
#include <vector>

#include "irr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return irr::run_cli(args, std::cout, std::cerr);
}
