#include <iostream>

#include "supamal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return supamal::run(args, std::cout, std::cerr);
}
