// Runs every acceptance criterion and prints one line per criterion.
#include <iostream>
#include <string>

#include "anosov/selftest.hpp"

int main(int argc, char** argv) {
  anosov::selftest::Options opt;
  bool verbose = !(argc > 1 && std::string(argv[1]) == "-q");
  auto results = anosov::selftest::run(opt);
  anosov::selftest::print_table(std::cout, results, verbose);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
