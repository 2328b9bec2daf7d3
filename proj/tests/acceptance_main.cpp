#include <iostream>

#include "ein/acceptance.hpp"

int main() {
  auto rs = ein::run_acceptance({}, &std::cout);
  int passed = 0;
  for (const auto& r : rs) passed += r.pass;
  bool ok = ein::matches_expected(rs);
  std::cout << passed << "/" << rs.size() << " passed; failures "
            << (ok ? "match the known set" : "differ from the known set") << std::endl;
  return ok ? 0 : 1;
}
