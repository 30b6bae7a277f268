#include <iostream>

#include "holonomic_cli/cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = holonomic::cli::parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << "\n";
    return parsed.exit_code;
  }
  const auto result = holonomic::cli::run(*parsed.config);
  (result.exit_code == holonomic::cli::kExitInvalid ? std::cerr : std::cout) << result.summary << "\n";
  return result.exit_code;
}
