#include <string>
#include <vector>

#include "kk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kk::cli_main(args);
}
