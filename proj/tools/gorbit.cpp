#include <iostream>

#include "gorbit/cli.hpp"

int main(int argc, char** argv) {
  return gorbit::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
