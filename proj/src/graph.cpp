#include "actinf/graph.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "actinf/rng.hpp"
#include "json.hpp"

namespace actinf {
namespace {

constexpr std::array<double, 4> kWeightChoices = {1.0, 2.0, 3.0, 4.0};

std::vector<std::vector<int>> between_adjacency(const WeightedDigraph& g) {
  std::vector<std::vector<int>> adj(g.num_nodes);
  for (const Edge& e : g.edges) {
    if (e.source != e.target) adj[e.source].push_back(e.target);
  }
  return adj;
}

// Tarjan over between-node edges. Components come out in reverse topological
// order of the condensation.
std::vector<int> strongly_connected_components(int num_nodes,
                                               const std::vector<std::vector<int>>& adj,
                                               int& num_components) {
  std::vector<int> index(num_nodes, -1), lowlink(num_nodes, 0), component(num_nodes, -1);
  std::vector<bool> on_stack(num_nodes, false);
  std::vector<int> stack;
  int next_index = 0;
  num_components = 0;

  // Explicit DFS stack: (node, next child position).
  std::vector<std::pair<int, std::size_t>> work;
  for (int root = 0; root < num_nodes; ++root) {
    if (index[root] != -1) continue;
    work.push_back({root, 0});
    while (!work.empty()) {
      auto& [v, child] = work.back();
      if (child == 0) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (child < adj[v].size()) {
        const int w = adj[v][child++];
        if (index[w] == -1) {
          work.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;
      if (lowlink[v] == index[v]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = num_components;
          if (w == v) break;
        }
        ++num_components;
      }
      work.pop_back();
      if (!work.empty()) {
        const int parent = work.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  return component;
}

// Connects the condensation components into a single cycle, adding one
// weight-1 edge per missing consecutive link.
void repair_strong_connectivity(WeightedDigraph& g) {
  while (true) {
    const auto adj = between_adjacency(g);
    int num_components = 0;
    const auto component = strongly_connected_components(g.num_nodes, adj, num_components);
    if (num_components <= 1) return;

    // Tarjan emits components in reverse topological order; flip it.
    auto topo_of = [&](int node) { return num_components - 1 - component[node]; };
    std::vector<int> representative(num_components, std::numeric_limits<int>::max());
    for (int v = 0; v < g.num_nodes; ++v) {
      representative[topo_of(v)] = std::min(representative[topo_of(v)], v);
    }
    std::vector<std::set<int>> links(num_components);
    for (const Edge& e : g.edges) {
      if (e.source != e.target) links[topo_of(e.source)].insert(topo_of(e.target));
    }
    for (int c = 0; c < num_components; ++c) {
      const int next = (c + 1) % num_components;
      if (!links[c].contains(next)) {
        g.edges.push_back({representative[c], representative[next], 1.0});
      }
    }
  }
}

bool reaches_all(const WeightedDigraph& g, int source, const std::vector<std::vector<int>>& adj) {
  std::vector<bool> seen(g.num_nodes, false);
  std::vector<int> frontier{source};
  seen[source] = true;
  int count = 1;
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        frontier.push_back(w);
      }
    }
  }
  return count == g.num_nodes;
}

void sort_edges(WeightedDigraph& g) {
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.source, a.target) < std::pair(b.source, b.target);
  });
}

}  // namespace

int WeightedDigraph::edge_index(int source, int target) const {
  const Edge probe{source, target, 0.0};
  auto it = std::lower_bound(edges.begin(), edges.end(), probe, [](const Edge& a, const Edge& b) {
    return std::pair(a.source, a.target) < std::pair(b.source, b.target);
  });
  if (it == edges.end() || it->source != source || it->target != target) return -1;
  return static_cast<int>(it - edges.begin());
}

double WeightedDigraph::edge_weight(int source, int target) const {
  const int idx = edge_index(source, target);
  if (idx < 0) throw std::invalid_argument("edge_weight: no such edge");
  return edges[idx].weight;
}

double WeightedDigraph::max_between_weight() const {
  double best = 0.0;
  for (const Edge& e : edges) {
    if (e.source != e.target) best = std::max(best, e.weight);
  }
  return best;
}

WeightedDigraph generate_graph(int num_nodes, std::uint64_t seed) {
  if (num_nodes < 2) throw std::invalid_argument("generate_graph: num_nodes must be at least 2");

  rng::Sampler rand(seed);
  WeightedDigraph g;
  g.num_nodes = num_nodes;

  const double inclusion = 2.0 / num_nodes;
  for (int u = 0; u < num_nodes; ++u) {
    for (int v = 0; v < num_nodes; ++v) {
      if (u == v) continue;
      if (rand.uniform01() < inclusion) {
        g.edges.push_back({u, v, kWeightChoices[rand.uniform_index(kWeightChoices.size())]});
      }
    }
  }

  repair_strong_connectivity(g);

  g.start_node = static_cast<int>(rand.uniform_index(num_nodes));
  int dest = static_cast<int>(rand.uniform_index(num_nodes - 1));
  if (dest >= g.start_node) ++dest;  // without replacement
  g.destination_node = dest;

  const double loop_weight = g.max_between_weight() + 1.0;
  for (int v = 0; v < num_nodes; ++v) {
    g.edges.push_back({v, v, v == g.destination_node ? 0.0 : loop_weight});
  }

  sort_edges(g);
  return g;
}

ShortestPath shortest_path(const WeightedDigraph& graph) {
  const int n = graph.num_nodes;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Distance-to-destination over the reversed between-node graph, then a
  // greedy walk from the start picking the smallest next node that stays on
  // an optimal path. That yields the lexicographically smallest sequence.
  std::vector<double> dist_to(n, kInf);
  dist_to[graph.destination_node] = 0.0;
  std::vector<bool> done(n, false);
  for (int round = 0; round < n; ++round) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!done[v] && dist_to[v] < kInf && (best == -1 || dist_to[v] < dist_to[best])) best = v;
    }
    if (best == -1) break;
    done[best] = true;
    for (const Edge& e : graph.edges) {
      if (e.source == e.target || e.target != best) continue;
      if (dist_to[e.source] > e.weight + dist_to[best]) {
        dist_to[e.source] = e.weight + dist_to[best];
      }
    }
  }

  ShortestPath result;
  result.total_weight = dist_to[graph.start_node];
  int current = graph.start_node;
  result.nodes.push_back(current);
  while (current != graph.destination_node) {
    int next = -1;
    for (const Edge& e : graph.edges) {
      if (e.source != current || e.source == e.target) continue;
      if (e.weight + dist_to[e.target] == dist_to[current]) {
        if (next == -1 || e.target < next) next = e.target;
      }
    }
    if (next == -1) throw std::logic_error("shortest_path: destination unreachable");
    result.nodes.push_back(next);
    current = next;
  }
  return result;
}

bool is_strongly_connected(const WeightedDigraph& graph) {
  const auto adj = between_adjacency(graph);
  for (int v = 0; v < graph.num_nodes; ++v) {
    if (!reaches_all(graph, v, adj)) return false;
  }
  return true;
}

void validate_graph(const WeightedDigraph& graph) {
  if (graph.num_nodes < 2) throw std::invalid_argument("graph: num_nodes must be at least 2");
  if (graph.start_node < 0 || graph.start_node >= graph.num_nodes ||
      graph.destination_node < 0 || graph.destination_node >= graph.num_nodes) {
    throw std::invalid_argument("graph: start or destination out of range");
  }
  if (graph.start_node == graph.destination_node) {
    throw std::invalid_argument("graph: start must differ from destination");
  }

  std::set<std::pair<int, int>> seen;
  std::vector<bool> has_loop(graph.num_nodes, false);
  for (const Edge& e : graph.edges) {
    if (e.source < 0 || e.source >= graph.num_nodes || e.target < 0 ||
        e.target >= graph.num_nodes) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (e.weight < 0.0) throw std::invalid_argument("graph: negative edge weight");
    if (!seen.insert({e.source, e.target}).second) {
      throw std::invalid_argument("graph: duplicate edge");
    }
    if (e.source == e.target) has_loop[e.source] = true;
  }
  for (int v = 0; v < graph.num_nodes; ++v) {
    if (!has_loop[v]) throw std::invalid_argument("graph: node missing its self-loop");
  }

  const double max_between = graph.max_between_weight();
  for (const Edge& e : graph.edges) {
    if (e.source != e.target) continue;
    if (e.source == graph.destination_node) {
      if (e.weight != 0.0) {
        throw std::invalid_argument("graph: destination self-loop weight must be 0");
      }
    } else if (e.weight <= max_between) {
      throw std::invalid_argument("graph: self-loop must outweigh between-node edges");
    }
  }

  if (!is_strongly_connected(graph)) {
    throw std::invalid_argument("graph: not strongly connected");
  }
}

std::string serialize_graph(const WeightedDigraph& graph) {
  nlohmann::json j;
  j["num_nodes"] = graph.num_nodes;
  j["start_node"] = graph.start_node;
  j["destination_node"] = graph.destination_node;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const Edge& e : graph.edges) {
    edges.push_back({e.source, e.target, e.weight});
  }
  return j.dump(2);
}

WeightedDigraph parse_graph(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  WeightedDigraph g;
  g.num_nodes = j.at("num_nodes").get<int>();
  g.start_node = j.at("start_node").get<int>();
  g.destination_node = j.at("destination_node").get<int>();
  for (const auto& e : j.at("edges")) {
    g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
  }
  sort_edges(g);
  validate_graph(g);
  return g;
}

}  // namespace actinf
