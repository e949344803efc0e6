#pragma once
// Acceptance suite shared by the `selftest` subcommand and the acceptance test.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace anosov::selftest {

struct Options {
  int jobs = 0;
  std::uint64_t seed = 20240611;
  std::vector<int> only;  // criterion ids; empty runs all
};

struct Criterion {
  int id = 0;
  std::string name;
  std::string statement;  // the checked statement in words
  bool pass = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

std::vector<Criterion> run(const Options& opt);

// One line per criterion: "[PASS] 3 det identity ..." followed by indented details.
void print_table(std::ostream& os, const std::vector<Criterion>& rs, bool verbose = true);

}  // namespace anosov::selftest
