#include <string>
#include <vector>

#include "depthwarp/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return depthwarp::run_cli(args);
}
