#include <cstdio>

namespace tilespec::cli {

int run(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::fprintf(stderr, "tilespec: no subcommands wired up yet\n");
  return 2;
}

}  // namespace tilespec::cli
