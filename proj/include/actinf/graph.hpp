#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace actinf {

struct Edge {
  int source = 0;
  int target = 0;
  double weight = 0.0;

  bool operator==(const Edge&) const = default;
};

// Directed weighted graph with one self-loop per node, a designated start
// node and a designated destination node. Between-node edges form a strongly
// connected digraph; every non-destination self-loop is heavier than any
// between-node edge and the destination self-loop has weight zero.
struct WeightedDigraph {
  int num_nodes = 0;
  std::vector<Edge> edges;  // sorted by (source, target), no duplicates
  int start_node = -1;
  int destination_node = -1;

  /// Index into edges of (source, target), or -1 when absent.
  int edge_index(int source, int target) const;
  /// Weight of (source, target); throws if the edge does not exist.
  double edge_weight(int source, int target) const;
  /// Largest weight among between-node (non-self-loop) edges.
  double max_between_weight() const;

  bool operator==(const WeightedDigraph&) const = default;
};

/// Generates a random graph: each ordered non-self pair is included with
/// probability 2/|V|, strong connectivity is then repaired, self-loops and
/// start/destination nodes are added. Pure function of (num_nodes, seed).
WeightedDigraph generate_graph(int num_nodes, std::uint64_t seed);

struct ShortestPath {
  std::vector<int> nodes;  // start .. destination
  double total_weight = 0.0;
};

/// Minimum-weight directed path over between-node edges from start to
/// destination. Ties broken toward the lexicographically smallest node
/// sequence.
ShortestPath shortest_path(const WeightedDigraph& graph);

/// Throws std::invalid_argument if any WeightedDigraph invariant is violated.
void validate_graph(const WeightedDigraph& graph);

bool is_strongly_connected(const WeightedDigraph& graph);

/// JSON round trip used by the run logs (fields: num_nodes, edges,
/// start_node, destination_node).
std::string serialize_graph(const WeightedDigraph& graph);
WeightedDigraph parse_graph(const std::string& text);

}  // namespace actinf
