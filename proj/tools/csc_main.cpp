#include <string>
#include <vector>

#include "csc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return csc::cli::run(args);
}
