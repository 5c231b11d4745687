#include <iostream>

#include "zakgross/cli.hpp"

int main(int argc, char** argv) {
  return zakgross::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
