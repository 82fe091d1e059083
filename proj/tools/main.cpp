#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto r = addcomb::cli::run(args);
  bool to_file = false;
  for (std::size_t i = 0; i < args.size(); ++i) to_file = to_file || args[i] == "--out" || args[i].starts_with("--out=");
  if (!to_file || r.exit_code == addcomb::cli::kInputError) std::cout << r.output;
  return r.exit_code;
}
