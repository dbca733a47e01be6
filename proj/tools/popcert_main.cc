#include <iostream>
#include <string>
#include <vector>

#include "popcert/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return popcert::Run(args, std::cout, std::cerr);
}
