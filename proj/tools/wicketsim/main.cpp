#include <iostream>
#include <string>
#include <vector>

#include "wicketsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return wicketsim::cli::run(args, std::cout, std::cerr);
}
