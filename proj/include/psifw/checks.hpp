// Built-in regression suite: worked examples and generated property runs.
#pragma once

#include "psifw/firework.hpp"

#include <string>
#include <vector>

namespace psifw::checks {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Strata reached for one exponent vector under one choice of the j_q.
struct DegreeLawCase {
  int n = 0;
  std::vector<int> exponents;  // a_1..a_n
  std::vector<int> js;
  Integer expected;
  std::size_t actual = 0;
  std::vector<trees::MarkedTree> strata;
};

std::vector<std::vector<int>> exponent_vectors(int n, int total);
// Two j-assignments per vector: smallest and largest j != i.
std::vector<DegreeLawCase> degree_law_cases(int n, unsigned threads = 1, std::size_t stride = 1);

CheckResult worked_example();       // 1
CheckResult degree_law(unsigned threads = 1);  // 2
CheckResult bezout();               // 3
CheckResult new_multiplicity();     // 4
CheckResult p2_degeneration();      // 5
CheckResult property_suites(unsigned threads = 1);  // 6

std::vector<CheckResult> run_all(unsigned threads = 1);

// Shared example data.
std::vector<kapranov::PsiSpec> worked_example_specs();

}  // namespace psifw::checks
