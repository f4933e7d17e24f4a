#include <string>
#include <vector>

#include "lep/cli.hpp"

int main(int argc, char** argv) {
  return lep::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
