#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return fstgec::cli::RunCli(argc, argv, std::cout, std::cerr);
}
