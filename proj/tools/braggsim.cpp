// braggsim: command-line front end.
//   braggsim --preset fig2a --out out/
//   braggsim --v0 8.1 --theta-pi 2/7 --backend all --format json

#include <iostream>
#include <string>
#include <vector>

#include "braggsim/config.hpp"
#include "braggsim/errors.hpp"
#include "braggsim/output.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  bool help = false;
  for (const auto& a : args) help = help || a == "-h" || a == "--help";

  try {
    const auto config = braggsim::parse_config(args);
    return braggsim::run(config, std::cerr);
  } catch (const braggsim::UsageError& e) {
    (help ? std::cout : std::cerr) << e.what() << '\n';
    return help ? 0 : 2;
  } catch (const braggsim::ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
