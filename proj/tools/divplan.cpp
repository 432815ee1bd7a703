#include <iostream>

#include "divplan/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return divplan::cli::run(args, std::cout, std::cerr);
}
