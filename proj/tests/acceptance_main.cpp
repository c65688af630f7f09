// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <iostream>

#include "chow/acceptance.hpp"

int main() {
  const auto results = chow::run_acceptance();
  std::cout << chow::format_acceptance(results);
  for (const auto& r : results) {
    if (!r.passed) return 1;
  }
  return 0;
}
