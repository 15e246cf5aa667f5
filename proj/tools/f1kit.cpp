#include <iostream>
#include <string>
#include <vector>

#include "f1kit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = f1kit::cli::main_with_args(args);
  std::cout << result.output << std::flush;
  std::cerr << result.error << std::flush;
  return result.status;
}
