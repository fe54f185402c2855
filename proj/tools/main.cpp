#include <iostream>
#include <string>
#include <vector>

#include "blockarith/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return blockarith::run(args, std::cout, std::cerr);
}
