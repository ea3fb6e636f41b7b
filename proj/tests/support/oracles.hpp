#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lpstruct/energy/energy_lp.hpp"
#include "lpstruct/linalg.hpp"
#include "lpstruct/lp/linear_program.hpp"
#include "lpstruct/sp/graph.hpp"

// Reference implementations used only by the tests. None of them call into the
// library code they are checking.
namespace oracle {

using lpstruct::Matrix;
using lpstruct::Vector;

// Least squares with intercept via long double normal equations. Returns the
// slope coefficients (intercept dropped).
Vector ols(const std::vector<Vector>& predictors, const Vector& target);

// Central differences of f around w, entry by entry.
Matrix fd_gradient(const std::function<double(const Matrix&)>& f, const Matrix& w, double step);

// exp(M) by a long double Taylor series with scaling and squaring.
Matrix taylor_expm(const Matrix& m);

// Largest objective over all intersection points of k tight constraints
// (rows of A, x >= lower, x <= upper) that are feasible. nullopt if none.
std::optional<double> vertex_optimum(const lpstruct::lp::LinearProgram& lp);

// Bellman-Ford distance from source to sink; nullopt if unreachable.
std::optional<double> bellman_ford(const lpstruct::sp::DirectedGraph& g);

// Every simple source-to-sink path, as edge index lists.
std::vector<std::vector<std::size_t>> all_paths(const lpstruct::sp::DirectedGraph& g);

// Degree-based path check written from the definition.
bool is_simple_path(const lpstruct::sp::DirectedGraph& g, const std::vector<std::uint8_t>& x);

// Largest violation of the household model equations (physical convention).
double energy_violation(const lpstruct::energy::EnergyConfig& cfg, const lpstruct::energy::EnergyTimeseries& ts,
                        const lpstruct::energy::EnergySolution& sol);

}  // namespace oracle
