#pragma once

#include <optional>

#include "lpstruct/lp/linear_program.hpp"
#include "lpstruct/sp/graph.hpp"

namespace lpstruct::sp {

// Node-arc incidence matrix: +1 at (tail, e), -1 at (head, e).
Matrix incidence_matrix(const DirectedGraph& g);

// min cost.x  s.t. out(v) - in(v) = +1 (source), -1 (sink), 0 otherwise,
// 0 <= x <= 1. Each equality becomes a <= pair, node-major, so row 2v holds the
// incidence row of node v and row 2v+1 its negation.
lp::LinearProgram build_sp_lp(const DirectedGraph& g);

// 1 iff the selected edges form one simple directed source-to-sink path.
int path_validity(const DirectedGraph& g, const PathSelection& sel);

// Solves build_sp_lp with the simplex and rounds the integral vertex. Zero-cost
// circulations that an optimal vertex may carry are stripped so the result is
// a simple path. Throws NoPathError when the sink is unreachable.
PathSelection solve_sp(const DirectedGraph& g);

struct LpPathResult {
  PathSelection selection;
  Vector relaxation;  // raw LP vertex before rounding
};
LpPathResult solve_sp_detailed(const DirectedGraph& g);

struct DijkstraResult {
  std::optional<PathSelection> path;  // nullopt: sink unreachable
  double distance = 0.0;
};

// Label-setting shortest path; equal-distance ties keep the smaller edge index.
DijkstraResult dijkstra(const DirectedGraph& g);

}  // namespace lpstruct::sp
