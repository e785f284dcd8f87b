#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace {
std::uint64_t g_seed = 20240101;
}

std::uint64_t oracle::test_seed() { return g_seed; }

// Accepts --seed=N (or GKZ_TEST_SEED) in addition to the doctest options.
int main(int argc, char** argv) {
  if (const char* env = std::getenv("GKZ_TEST_SEED")) g_seed = std::stoull(env);
  std::vector<char*> rest;
  for (int i = 0; i < argc; ++i) {
    if (std::strncmp(argv[i], "--seed=", 7) == 0)
      g_seed = std::stoull(argv[i] + 7);
    else
      rest.push_back(argv[i]);
  }
  std::cout << "seed " << g_seed << "\n";
  doctest::Context ctx;
  ctx.applyCommandLine(static_cast<int>(rest.size()), rest.data());
  return ctx.run();
}
