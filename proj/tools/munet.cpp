#include <iostream>
#include <string>
#include <vector>

#include "munet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return munet::run_command(args, std::cout, std::cerr);
}
