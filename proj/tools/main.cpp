#include <csignal>
#include <iostream>

#include "cli.hpp"

namespace {
extern "C" void on_interrupt(int) { usaphmp::cli::request_stop(); }
}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_interrupt);
  std::vector<std::string> args(argv, argv + argc);
  return usaphmp::cli::run(args, std::cout, std::cerr);
}
