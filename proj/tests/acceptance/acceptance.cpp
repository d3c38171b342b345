#include <cstdlib>
#include <iostream>
#include <string>

#include "noisyemo/acceptance.hpp"

// Prints one PASS/FAIL line per criterion of the chosen profile.
int main(int argc, char** argv) {
  std::string profile = "quick";
  noisyemo::AcceptanceOptions opts;
  opts.log = &std::cerr;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--profile" && i + 1 < argc) {
      profile = argv[++i];
    } else if (arg == "--workers" && i + 1 < argc) {
      opts.workers = std::atoi(argv[++i]);
    } else if (arg == "--seed" && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: noisyemo_acceptance [--profile quick|paper-n10|paper-n30|full] [--workers N] [--seed S]\n";
      return 2;
    }
  }
  noisyemo::Profile p;
  try {
    p = noisyemo::profile_from_string(profile);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  bool ok = true;
  for (int id : noisyemo::criteria_for(p)) {
    const auto r = noisyemo::run_criterion(id, opts);
    std::cout << noisyemo::format_result(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
