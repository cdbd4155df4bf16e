#include <iostream>
#include <string>
#include <vector>

#include "tameconf/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto report = tameconf::run(args);
  std::cout << tameconf::render(report, tameconf::wants_json(args));
  return report.exit_code;
}
