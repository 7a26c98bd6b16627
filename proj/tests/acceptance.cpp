#include <iostream>

#include "repgame/harness/suites.hpp"

int main() {
  using namespace repgame::harness;
  bool all = true;
  for (const auto& name : suite_names()) {
    const SuiteResult r = run_suite(name);
    all = all && r.pass;
    std::cout << "criterion " << r.criterion << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << '\n';
    for (const auto& d : r.details) std::cout << "    " << d << '\n';
    std::cout.flush();
  }
  return all ? 0 : 1;
}
