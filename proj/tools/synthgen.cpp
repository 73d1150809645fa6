// Regenerates the bundled synthetic corpus. Output is deterministic, so the
// checked-in data file can always be reproduced and diffed.

#include <cstdio>
#include <iostream>

#include "folnar/dataset/io.hpp"
#include "folnar/dataset/synthetic.hpp"

int main(int argc, char** argv) {
  auto corpus = folnar::dataset::make_synthetic_corpus();
  if (argc > 1) {
    folnar::dataset::save_instances(corpus, std::string(argv[1]));
    std::fprintf(stderr, "wrote %zu instances to %s\n", corpus.size(),
                 argv[1]);
  } else {
    folnar::dataset::save_instances(corpus, std::cout);
  }
  return 0;
}
