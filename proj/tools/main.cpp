#include <iostream>

#include "kuperberg/cli.hpp"

int main(int argc, char** argv) {
  return kuperberg::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
