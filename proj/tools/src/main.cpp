#include <iostream>

#include "brownlab/cli.hpp"

int main(int argc, char** argv) {
  return brownlab::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
