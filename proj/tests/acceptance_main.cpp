#include "toric/acceptance.hpp"

#include <iostream>

int main() {
  bool ok = toric::run_acceptance(std::cout);
  return ok ? 0 : 1;
}
