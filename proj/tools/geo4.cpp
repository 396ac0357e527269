#include <iostream>

#include "geo4/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return geo4::cli::run(args, std::cout, std::cerr);
}
