#include <atomic>
#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted.store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_interrupt);
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv, argv + argc);
  return tricol::cli::run(args, std::cout, std::cerr, &g_interrupted);
}
