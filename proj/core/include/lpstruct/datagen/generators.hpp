#pragma once

#include "lpstruct/datagen/case_spec.hpp"
#include "lpstruct/datagen/dataset.hpp"
#include "lpstruct/energy/energy_lp.hpp"
#include "lpstruct/lp/linear_program.hpp"
#include "lpstruct/rng.hpp"
#include "lpstruct/sp/graph.hpp"

namespace lpstruct::datagen {

// Cases general_xy .. general_cabs. Parametric cases resample draws whose LP
// is infeasible or unbounded; more than 95% rejections aborts.
Dataset gen_general(const CaseSpec& spec, const lp::LinearProgram& lp);

// Cases sp_xy and sp_As.
Dataset gen_sp(const CaseSpec& spec, const sp::DirectedGraph& g);

// Case energy_cs: five input columns (four costs and total demand) followed by
// the six aggregate outputs.
Dataset gen_energy(const CaseSpec& spec, const energy::EnergyScenario& base, const energy::SolveOptions& options = {});

// Box used for general_xy when CaseSpec leaves it empty: from lower_j to 1.25
// times the largest x_j over the polytope, or, when x_j is unbounded, 1.25 times
// the farthest point where a constraint row crosses the x_j axis.
std::vector<lp::Range> default_box(const lp::LinearProgram& lp);

// Random walk from source to sink visiting no node twice (restarts on dead ends).
sp::PathSelection random_path(const sp::DirectedGraph& g, Rng& rng);

}  // namespace lpstruct::datagen
