#include <iostream>

#include "criteria.hpp"

int main() {
  bool ok = true;
  for (const auto& r : steer::acceptance::run_all()) {
    std::cout << steer::acceptance::format(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
