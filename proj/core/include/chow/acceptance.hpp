#pragma once

#include <string>
#include <vector>

#include "chow/bielliptic.hpp"

namespace chow {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // mismatches, or a short summary on success
  double seconds = 0;
};

/// Runs the ten acceptance criteria in order; criterion 1 runs first so its
/// timing bound sees cold caches. Exact rational comparisons throughout.
std::vector<CriterionResult> run_acceptance(const PipelineInputs& in = default_inputs());

/// One line per criterion: "PASS  1  <title>  (0.01 s)  <detail>".
std::string format_acceptance(const std::vector<CriterionResult>& results);

}  // namespace chow
