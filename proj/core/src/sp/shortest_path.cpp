#include "lpstruct/sp/shortest_path.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "lpstruct/error.hpp"
#include "lpstruct/lp/simplex.hpp"

namespace lpstruct::sp {

Matrix incidence_matrix(const DirectedGraph& g) {
  Matrix inc(g.node_count(), g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    inc(g.edges()[e].tail, e) = 1.0;
    inc(g.edges()[e].head, e) = -1.0;
  }
  return inc;
}

lp::LinearProgram build_sp_lp(const DirectedGraph& g) {
  if (g.source() == g.sink()) throw InvalidArgument("build_sp_lp: source and sink coincide");
  const Matrix inc = incidence_matrix(g);
  lp::LpBuilder builder(g.edge_count(), lp::Sense::minimize);
  builder.objective(g.costs());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const double rhs = v == g.source() ? 1.0 : (v == g.sink() ? -1.0 : 0.0);
    builder.add_eq(Vector(inc.row(v).begin(), inc.row(v).end()), rhs);
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) builder.bounds(e, 0.0, 1.0);
  return builder.build();
}

int path_validity(const DirectedGraph& g, const PathSelection& sel) {
  if (sel.size() != g.edge_count()) throw DimensionError("path_validity: selection", g.edge_count(), sel.size());
  const std::size_t n = g.node_count();
  std::vector<std::size_t> in(n, 0);
  std::vector<std::size_t> out(n, 0);
  std::vector<std::size_t> next_edge(n, g.edge_count());
  std::size_t selected = 0;
  for (std::size_t e = 0; e < sel.size(); ++e) {
    if (sel.x[e] > 1) return 0;
    if (!sel.x[e]) continue;
    ++selected;
    ++out[g.edges()[e].tail];
    ++in[g.edges()[e].head];
    next_edge[g.edges()[e].tail] = e;
  }
  if (selected == 0) return 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (v == g.source()) {
      if (out[v] != 1 || in[v] != 0) return 0;
    } else if (v == g.sink()) {
      if (in[v] != 1 || out[v] != 0) return 0;
    } else if (in[v] + out[v] > 0 && (in[v] != 1 || out[v] != 1)) {
      return 0;
    }
  }
  // Walk from the source; a disjoint cycle would leave edges unvisited.
  std::size_t v = g.source();
  std::size_t walked = 0;
  while (v != g.sink()) {
    const std::size_t e = next_edge[v];
    if (e == g.edge_count() || walked > selected) return 0;
    ++walked;
    v = g.edges()[e].head;
  }
  return walked == selected ? 1 : 0;
}

LpPathResult solve_sp_detailed(const DirectedGraph& g) {
  const auto result = lp::solve(build_sp_lp(g));
  if (result.status != lp::SolveStatus::optimal)
    throw NoPathError("solve_sp: shortest-path LP is " + std::string(lp::to_string(result.status)) +
                      " (sink unreachable from source?)");
  const Vector& s = *result.s;
  PathSelection raw{std::vector<std::uint8_t>(g.edge_count(), 0)};
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (std::abs(s[e] - 1.0) <= 1e-6) {
      raw.x[e] = 1;
    } else if (std::abs(s[e]) > 1e-6) {
      throw Error("solve_sp: non-integral LP vertex at edge " + std::to_string(e) + " (value " + std::to_string(s[e]) + ")");
    }
  }
  // Follow the unit flow from the source; anything else is a zero-cost cycle.
  PathSelection path{std::vector<std::uint8_t>(g.edge_count(), 0)};
  std::vector<std::size_t> next_edge(g.node_count(), g.edge_count());
  for (std::size_t e = 0; e < raw.size(); ++e)
    if (raw.x[e]) next_edge[g.edges()[e].tail] = e;
  std::size_t v = g.source();
  std::vector<bool> seen(g.node_count(), false);
  while (v != g.sink()) {
    const std::size_t e = next_edge[v];
    if (e == g.edge_count() || seen[v]) throw Error("solve_sp: LP vertex does not carry a source-sink path");
    seen[v] = true;
    path.x[e] = 1;
    v = g.edges()[e].head;
  }
  return {std::move(path), s};
}

PathSelection solve_sp(const DirectedGraph& g) { return solve_sp_detailed(g).selection; }

DijkstraResult dijkstra(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  const std::size_t none = g.edge_count();
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) out[g.edges()[e].tail].push_back(e);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> pred(n, none);
  std::vector<bool> done(n, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[g.source()] = 0.0;
  queue.push({0.0, g.source()});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v] || d > dist[v]) continue;
    done[v] = true;
    for (std::size_t e : out[v]) {
      const std::size_t h = g.edges()[e].head;
      if (done[h]) continue;
      const double cand = d + g.costs()[e];
      if (cand < dist[h] || (cand == dist[h] && e < pred[h])) {
        dist[h] = cand;
        pred[h] = e;
        queue.push({cand, h});
      }
    }
  }
  DijkstraResult result;
  if (!std::isfinite(dist[g.sink()]) || g.source() == g.sink()) return result;
  PathSelection sel{std::vector<std::uint8_t>(g.edge_count(), 0)};
  for (std::size_t v = g.sink(); v != g.source(); v = g.edges()[pred[v]].tail) sel.x[pred[v]] = 1;
  result.distance = dist[g.sink()];
  result.path = std::move(sel);
  return result;
}

}  // namespace lpstruct::sp
