#include <iostream>

#include "ie/cli.hpp"

int main(int argc, char** argv) {
  return ie::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
