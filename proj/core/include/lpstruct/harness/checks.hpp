#pragma once

#include <string>
#include <vector>

#include "lpstruct/datagen/case_spec.hpp"
#include "lpstruct/datagen/dataset.hpp"
#include "lpstruct/sp/graph.hpp"
#include "lpstruct/structure/notears.hpp"

namespace lpstruct::harness {

struct CheckSpec {
  std::string name;
  std::string expected;
  // false: recorded for comparison with the reported figures only.
  bool asserted = true;
};

struct CheckResult {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
  bool asserted = true;
};

// The full list of checks a report for `id` must contain, in order.
std::vector<CheckSpec> expected_checks(datagen::CaseId id, bool invert_indicator);

struct CheckInputs {
  const datagen::Dataset& dataset;
  const structure::WeightedDag& dag;
  const sp::DirectedGraph* graph = nullptr;  // sp cases
};

// Evaluates every check of the catalog entry for spec.id on the thresholded
// weights. Throws Error if the produced list does not match the catalog.
std::vector<CheckResult> evaluate_checks(const datagen::CaseSpec& spec, const CheckInputs& in);

// Least-squares coefficients of column `target` on `predictors` (with intercept).
Vector ols_coefficients(const Matrix& values, const std::vector<std::size_t>& predictors, std::size_t target);

}  // namespace lpstruct::harness
