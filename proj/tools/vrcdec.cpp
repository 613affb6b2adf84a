#include <iostream>

#include "vrc/cli.hpp"

int main(int argc, char** argv) {
  return vrc::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
