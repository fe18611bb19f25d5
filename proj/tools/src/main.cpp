#include <iostream>

#include "demonlab/cli/app.hpp"

int main(int argc, char** argv) {
  return demonlab::cli::run(argc, argv, std::cout, std::cerr);
}
