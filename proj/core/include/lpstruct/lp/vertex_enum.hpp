#pragma once

#include <vector>

#include "lpstruct/lp/linear_program.hpp"

namespace lpstruct::lp {

// Brute-force vertex oracle: solves every k-subset of active constraints (rows
// of A plus the bound rows) and keeps the feasible intersection points.
// Desk scale only: requires k <= 6 and m + 2k <= 24. Output is sorted
// lexicographically with points closer than 1e-7 merged.
std::vector<Vector> enumerate_vertices(const LinearProgram& lp);

// Best objective over enumerate_vertices(); nullopt when the list is empty.
std::optional<double> brute_force_optimum(const LinearProgram& lp);

}  // namespace lpstruct::lp
