#pragma once

// Hand-built graphs shared across tests. Edge lists are kept sorted by
// (source, target) as the WeightedDigraph invariants require.

#include "actinf/graph.hpp"

namespace actinf::testing {

/// 3-node directed cycle 0 -> 1 -> 2 -> 0 plus self-loops, start 0, dest 2.
inline WeightedDigraph cycle3(double w01 = 1.0, double w12 = 1.0, double w20 = 1.0) {
  const double heavy =
      (w01 > w12 ? (w01 > w20 ? w01 : w20) : (w12 > w20 ? w12 : w20)) + 1.0;
  WeightedDigraph g;
  g.num_nodes = 3;
  g.start_node = 0;
  g.destination_node = 2;
  g.edges = {
      {0, 0, heavy}, {0, 1, w01}, {1, 1, heavy}, {1, 2, w12}, {2, 0, w20}, {2, 2, 0.0},
  };
  return g;
}

/// 3-node graph with a heavy direct edge 0 -> 2 (weight 4) and the cheap
/// two-hop route 0 -> 1 -> 2 (weights 1 + 1); start 0, dest 2.
inline WeightedDigraph shortcut3() {
  WeightedDigraph g;
  g.num_nodes = 3;
  g.start_node = 0;
  g.destination_node = 2;
  g.edges = {
      {0, 0, 5.0}, {0, 1, 1.0}, {0, 2, 4.0}, {1, 1, 5.0}, {1, 2, 1.0}, {2, 0, 1.0}, {2, 2, 0.0},
  };
  return g;
}

}  // namespace actinf::testing
