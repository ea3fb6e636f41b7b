#include "lpstruct/sp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lpstruct/error.hpp"
#include "lpstruct/rng.hpp"

namespace lpstruct::sp {

DirectedGraph::DirectedGraph(std::size_t node_count, std::vector<Edge> edges, Vector costs, std::size_t source,
                             std::size_t sink)
    : nodes_(node_count), edges_(std::move(edges)), costs_(std::move(costs)), source_(source), sink_(sink) {
  if (costs_.size() != edges_.size()) throw DimensionError("DirectedGraph: costs", edges_.size(), costs_.size());
  if (source_ >= nodes_ || sink_ >= nodes_) throw InvalidArgument("DirectedGraph: source/sink out of range");
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& [t, h] = edges_[e];
    if (t >= nodes_ || h >= nodes_) throw InvalidArgument("DirectedGraph: edge " + std::to_string(e) + " node id out of range");
    if (t == h) throw InvalidArgument("DirectedGraph: self-loop at edge " + std::to_string(e));
    if (!std::isfinite(costs_[e]) || costs_[e] < 0.0)
      throw InvalidArgument("DirectedGraph: edge " + std::to_string(e) + " cost must be finite and nonnegative");
  }
}

DirectedGraph DirectedGraph::with_costs(Vector costs) const {
  return DirectedGraph(nodes_, edges_, std::move(costs), source_, sink_);
}

double path_cost(const DirectedGraph& g, const PathSelection& sel) {
  if (sel.size() != g.edge_count()) throw DimensionError("path_cost: selection", g.edge_count(), sel.size());
  double total = 0.0;
  for (std::size_t e = 0; e < sel.size(); ++e)
    if (sel.x[e]) total += g.costs()[e];
  return total;
}

DirectedGraph bridge_graph() {
  std::vector<Edge> edges{
      {0, 1},  // bridge
      {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {2, 5},
  };
  Vector costs{1.0, 2.0, 3.0, 1.5, 2.75, 1.0, 4.0, 1.5, 5.0};
  return DirectedGraph(6, std::move(edges), std::move(costs), 0, 5);
}

std::vector<PathSelection> enumerate_paths(const DirectedGraph& g) {
  std::vector<std::vector<std::size_t>> out(g.node_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) out[g.edges()[e].tail].push_back(e);
  std::vector<PathSelection> paths;
  if (g.source() == g.sink()) return paths;
  std::vector<bool> visited(g.node_count(), false);
  PathSelection cur{std::vector<std::uint8_t>(g.edge_count(), 0)};
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    if (v == g.sink()) {
      paths.push_back(cur);
      return;
    }
    visited[v] = true;
    for (std::size_t e : out[v]) {
      const std::size_t h = g.edges()[e].head;
      if (visited[h]) continue;
      cur.x[e] = 1;
      dfs(h);
      cur.x[e] = 0;
    }
    visited[v] = false;
  };
  dfs(g.source());
  return paths;
}

DirectedGraph random_dag(std::size_t nodes, std::size_t edges, std::uint64_t seed, double cost_lo, double cost_hi) {
  if (nodes < 2) throw InvalidArgument("random_dag: need at least two nodes");
  const std::size_t max_edges = nodes * (nodes - 1) / 2;
  if (edges > max_edges) throw InvalidArgument("random_dag: too many edges for a simple DAG");
  Rng rng(splitmix64(seed ^ 0x5d9e0a5ULL));

  std::vector<bool> used(nodes * nodes, false);
  std::vector<Edge> list;
  // Backbone: increasing node sequence from 0 to n-1.
  std::size_t v = 0;
  while (v != nodes - 1 && list.size() < edges) {
    const std::size_t remaining = nodes - 1 - v;
    const std::size_t step = 1 + static_cast<std::size_t>(rng.below(std::min<std::size_t>(remaining, 3)));
    const std::size_t w = (list.size() + 1 == edges) ? nodes - 1 : v + step;
    list.push_back({v, w});
    used[v * nodes + w] = true;
    v = w;
  }
  std::vector<Edge> pool;
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t j = i + 1; j < nodes; ++j)
      if (!used[i * nodes + j]) pool.push_back({i, j});
  while (list.size() < edges && !pool.empty()) {
    const std::size_t pick = static_cast<std::size_t>(rng.below(pool.size()));
    list.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  // Shuffle so the backbone is not always the lowest edge indices.
  for (std::size_t i = list.size(); i > 1; --i) std::swap(list[i - 1], list[rng.below(i)]);
  Vector costs(list.size());
  for (double& c : costs) c = rng.uniform(cost_lo, cost_hi);
  return DirectedGraph(nodes, std::move(list), std::move(costs), 0, nodes - 1);
}

}  // namespace lpstruct::sp
