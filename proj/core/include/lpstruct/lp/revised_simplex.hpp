#pragma once

#include <cstddef>

#include "lpstruct/lp/simplex.hpp"
#include "lpstruct/lp/sparse_program.hpp"

namespace lpstruct::lp {

struct RevisedOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-7;
  // Eta vectors accumulated before the basis inverse is rebuilt.
  std::size_t refactor_interval = 64;
  std::size_t max_iterations = 50'000'000;
};

// Two-phase revised simplex with Bland's rule over a compressed column store.
// The basis inverse is kept in product form and periodically reinverted, so
// memory grows with the basis nonzeros rather than with rows^2.
SolveResult solve_revised(const SparseLinearProgram& lp, const RevisedOptions& options = {});

}  // namespace lpstruct::lp
