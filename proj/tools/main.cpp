#include <string>
#include <vector>

#include "sweatpp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sweatpp::parse_and_dispatch(args);
}
