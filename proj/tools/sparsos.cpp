#include <iostream>

#include "sparsos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sparsos::run_cli(args, std::cout, std::cerr);
}
