#include <cstdio>

namespace tilespec::cli {
int run(int argc, char** argv);
}

int main(int argc, char** argv) { return tilespec::cli::run(argc, argv); }
