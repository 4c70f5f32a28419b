#include <iostream>
#include <string>
#include <vector>

#include "lieiso_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lieiso::cli::run(args, std::cout, std::cerr);
}
