#include <string>
#include <vector>

#include "momentshape/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return momentshape::dispatch(args);
}
