#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpstruct/linalg.hpp"

namespace lpstruct::sp {

struct Edge {
  std::size_t tail;
  std::size_t head;
  bool operator==(const Edge&) const = default;
};

// Directed graph with nonnegative edge costs and a designated source and sink.
// The order of `edges` is the canonical index of the decision vector x.
class DirectedGraph {
 public:
  DirectedGraph(std::size_t node_count, std::vector<Edge> edges, Vector costs, std::size_t source, std::size_t sink);

  std::size_t node_count() const noexcept { return nodes_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Vector& costs() const noexcept { return costs_; }
  std::size_t source() const noexcept { return source_; }
  std::size_t sink() const noexcept { return sink_; }

  DirectedGraph with_costs(Vector costs) const;

  bool operator==(const DirectedGraph&) const = default;

 private:
  std::size_t nodes_;
  std::vector<Edge> edges_;
  Vector costs_;
  std::size_t source_;
  std::size_t sink_;
};

// x_e in {0, 1} per edge.
struct PathSelection {
  std::vector<std::uint8_t> x;

  std::size_t size() const noexcept { return x.size(); }
  bool operator==(const PathSelection&) const = default;
};

double path_cost(const DirectedGraph& g, const PathSelection& sel);

// Six nodes, nine edges. Every source-to-sink path starts with the bridge
// edge 0->1; the remaining eight edges form a DAG on nodes 1..5 in which no
// single edge lies on every path and every edge lies on some path.
DirectedGraph bridge_graph();
inline constexpr std::size_t kBridgeEdge = 0;

// All simple source-to-sink paths by depth-first enumeration (small graphs).
std::vector<PathSelection> enumerate_paths(const DirectedGraph& g);

// Random DAG-shaped instance: nodes 0..n-1 in topological order, source 0,
// sink n-1, a random backbone path from source to sink, remaining edges drawn
// from forward pairs without replacement, costs uniform in [cost_lo, cost_hi].
DirectedGraph random_dag(std::size_t nodes, std::size_t edges, std::uint64_t seed, double cost_lo = 0.0,
                         double cost_hi = 10.0);

}  // namespace lpstruct::sp
