#include <iostream>
#include <string>
#include <vector>

#include "rzero/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rzero::run_command(args, std::cout, std::cerr);
}
