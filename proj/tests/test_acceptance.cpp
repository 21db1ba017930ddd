#include <iostream>

#include "jumpstat/verify.hpp"

int main() {
  const auto results = jumpstat::run_verification_suite();
  const bool ok = jumpstat::report_verification(results, std::cout);
  return ok ? 0 : 1;
}
