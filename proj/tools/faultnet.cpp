#include <iostream>

#include "faultnet/commands.hpp"

int main(int argc, char** argv) {
  return faultnet::run_cli(argc, argv, std::cout, std::cerr);
}
