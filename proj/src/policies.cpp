#include "actinf/policies.hpp"

#include <stdexcept>

namespace actinf {

std::string to_string(PolicyScope scope) {
  return scope == PolicyScope::Global ? "global" : "local";
}

PolicyScope parse_scope(const std::string& text) {
  if (text == "global") return PolicyScope::Global;
  if (text == "local") return PolicyScope::Local;
  throw std::invalid_argument("unknown policy scope: " + text);
}

bool is_chained(const Policy& policy, const std::vector<std::pair<int, int>>& action_edges) {
  const int num_actions = static_cast<int>(action_edges.size());
  for (int action : policy.actions) {
    if (action < 0 || action >= num_actions) return false;
  }
  for (std::size_t i = 1; i < policy.actions.size(); ++i) {
    if (action_edges[policy.actions[i - 1]].second != action_edges[policy.actions[i]].first) {
      return false;
    }
  }
  return true;
}

PolicySet enumerate_policies(const WeightedDigraph& graph) {
  validate_graph(graph);

  PolicySet set;
  set.scope = PolicyScope::Global;
  set.num_nodes = graph.num_nodes;
  set.action_edges.reserve(graph.edges.size());
  for (const Edge& e : graph.edges) set.action_edges.emplace_back(e.source, e.target);

  // Edges are sorted by (source, target), so per-node out-lists are ascending
  // in action id and the depth-first walk below emits policies in
  // lexicographic action-id order.
  std::vector<std::vector<int>> out_actions(graph.num_nodes);
  for (int a = 0; a < static_cast<int>(graph.edges.size()); ++a) {
    out_actions[graph.edges[a].source].push_back(a);
  }

  std::vector<int> walk;
  walk.reserve(graph.num_nodes);
  auto extend = [&](auto&& self, int node) -> void {
    if (static_cast<int>(walk.size()) == graph.num_nodes) {
      set.policies.push_back(Policy{walk});
      return;
    }
    for (int action : out_actions[node]) {
      walk.push_back(action);
      self(self, set.action_edges[action].second);
      walk.pop_back();
    }
  };
  for (int node = 0; node < graph.num_nodes; ++node) extend(extend, node);
  return set;
}

PolicySet local_subspace(const PolicySet& policies, int location) {
  if (policies.scope != PolicyScope::Global) {
    throw std::invalid_argument("local_subspace: input must be global scope");
  }
  if (location < 0 || location >= policies.num_nodes) {
    throw std::invalid_argument("local_subspace: location out of range");
  }

  PolicySet local;
  local.scope = PolicyScope::Local;
  local.location = location;
  local.num_nodes = policies.num_nodes;
  local.action_edges = policies.action_edges;
  for (int i = 0; i < policies.size(); ++i) {
    if (policies.first_action_source(i) == location) {
      local.policies.push_back(policies.policies[i]);
    }
  }
  return local;
}

}  // namespace actinf
