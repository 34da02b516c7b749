#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <string>

// Some suites (CLI, acceptance) need the path of the built hcmc binary;
// it is passed as the first free argument by ctest.
std::string g_hcmc_binary;

int main(int argc, char** argv) {
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (!a.empty() && a[0] != '-') g_hcmc_binary = a;
  }
  return ctx.run();
}
