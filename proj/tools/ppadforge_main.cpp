#include <string>
#include <vector>

#include "ppadforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ppadforge::cli::run(args);
}
