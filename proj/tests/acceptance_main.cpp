// Runs every acceptance criterion; exit status 0 iff all pass.
// Usage: acceptance [--skip-large] [--seed N] [--artifacts DIR]

#include <iostream>
#include <string>

#include "rectcolor/acceptance.hpp"

int main(int argc, char** argv) {
  rectcolor::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--skip-large") {
      opt.skip_large = true;
    } else if (a == "--seed" && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else if (a == "--artifacts" && i + 1 < argc) {
      opt.artifact_dir = argv[++i];
    } else {
      std::cerr << "unknown argument " << a << "\n";
      return 2;
    }
  }
  const auto results = rectcolor::run_acceptance(opt, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
