#include "covres/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const covres::CliResult result = covres::run_cli(args);
  std::cout << result.output;
  std::cerr << result.diagnostics;
  return result.exit_code;
}
