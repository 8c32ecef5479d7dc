#include <iostream>

#include "coherence_lab/cli.hpp"

int main(int argc, char** argv) {
  return coherence_lab::run_cli(argc, argv, std::cout, std::cerr);
}
