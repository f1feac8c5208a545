#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  pursuit::cli::Environment env;
  if (const char* seed = std::getenv("PURSUIT_SEED")) env.seed = seed;
  return pursuit::cli::run(args, std::cout, std::cerr, env);
}
