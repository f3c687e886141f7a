#include <iostream>
#include <string>
#include <vector>

#include "unitfrac/cli.hpp"

int main(int argc, char** argv) {
  return unitfrac::cli::main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
