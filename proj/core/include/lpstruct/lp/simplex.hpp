#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "lpstruct/lp/linear_program.hpp"

namespace lpstruct::lp {

enum class SolveStatus { optimal, infeasible, unbounded };

std::string_view to_string(SolveStatus status) noexcept;

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Vector> s;          // present iff optimal
  std::optional<double> objective;  // c.s, present iff optimal
  std::size_t iterations = 0;

  bool optimal() const noexcept { return status == SolveStatus::optimal; }
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-7;
  std::size_t max_iterations = 20'000'000;
};

// Two-phase primal simplex on a dense tableau. Entering and leaving variables
// follow Bland's smallest-index rule, so the pivot sequence (and the returned
// vertex) is a deterministic function of the input.
//
// Throws SingularBasisError if the tableau degenerates numerically.
SolveResult solve(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace lpstruct::lp
