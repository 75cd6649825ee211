#include <string>
#include <vector>

#include "dynabench/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dynabench::run_cli(args);
}
