#include <iostream>
#include <string>
#include <vector>

#include "rolegroup/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rolegroup::RunCli(args, std::cout, std::cerr);
}
