#include <iostream>
#include <string>
#include <vector>

#include "cotton/app/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cotton::app::run_cli(args, std::cout, std::cerr);
}
