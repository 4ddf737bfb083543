#include <string>
#include <vector>

#include "dikin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dikin::cli::run(args);
}
