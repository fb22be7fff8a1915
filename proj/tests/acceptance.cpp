#include <iostream>

#include "sdtk/commands.hpp"

// Runs the full acceptance battery and prints one verdict line per
// criterion. Exit status is zero only when every criterion passes.
int main() {
  auto results = sdtk::run_acceptance_suite();
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " - " << r.name << "\n";
    if (!r.pass) std::cout << "  details: " << r.details.dump() << "\n";
    all = all && r.pass;
  }
  std::cout << (all ? "all criteria passed" : "criteria failed") << "\n";
  return all ? 0 : 1;
}
