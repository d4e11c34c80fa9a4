#include <iostream>
#include <string>
#include <vector>

#include "sdpfeas/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sdpfeas::cli::run(args, std::cout, std::cerr);
}
