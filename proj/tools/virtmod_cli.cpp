#include <iostream>

#include "virtmod/cli.hpp"

int main(int argc, char** argv) {
  return virtmod::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
